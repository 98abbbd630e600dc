//! Arithmetic over GF(2) and GF(2^m).
//!
//! [`BitPoly`] is the common currency of the crate: feedback polynomials,
//! characteristic polynomials of automata and shift-operator polynomials are
//! all values of this type. [`FieldContext`] realises GF(2^m) for `m <= 64`
//! modulo a primitive polynomial and computes minimal polynomials of powers
//! of the primitive root.

mod factors;
mod field;
mod poly;

pub use field::{
    cyclotomic_coset, is_irreducible, is_primitive, minimal_polynomial_of_power, FieldContext,
    FieldElement, MAX_FIELD_DEGREE,
};
pub use poly::{poly_mul_mod, poly_pow_mod, BitPoly};
