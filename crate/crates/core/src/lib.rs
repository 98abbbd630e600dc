//! Linear cellular-automaton models of the shrinking generator.
//!
//! A shrinking generator built from two LFSRs emits a sequence that is also
//! produced, as the trace of an end cell, by a null-boundary hybrid 90/150
//! cellular automaton of length `L2 * 2^(L1-1)`. This crate computes that
//! automaton, recovers the keystream from as many intercepted bits as the
//! automaton has cells, and relates the sequences of different cells by pure
//! phase shifts.
//!
//! ```
//! use shrinkca::{model_sg, BitPoly};
//!
//! let p2: BitPoly = "1+D+D^3+D^4+D^5".parse().unwrap();
//! let model = model_sg(2, &p2).unwrap();
//! assert_eq!(model.rules_a.to_string(), "0111001110");
//! assert_eq!(model.length, 10);
//! ```

pub mod attack;
pub mod automaton;
pub mod error;
pub mod gf2;
pub mod modeler;
pub mod phaseshift;
pub mod reproduce;
pub mod sequences;
pub mod shrinker;

pub use attack::{
    attack_sg, reconstruction_triangle, recover_keystream, recover_state, AttackReport,
    Orientation,
};
pub use automaton::{
    all_traces, ca_step, cell_trace, evolve, render_triangle, transition_matrix, triangle_rows,
    CaState, TransitionMatrix,
};
pub use error::{Error, Result};
pub use gf2::{
    cyclotomic_coset, is_irreducible, is_primitive, minimal_polynomial_of_power, poly_mul_mod,
    poly_pow_mod, BitPoly, FieldContext, FieldElement,
};
pub use modeler::{
    ca_charpoly, coset_polynomial, expand_once, model_sg, synthesize_ca, Rule, RuleVector,
    SgModel,
};
pub use phaseshift::{
    phase_report, shift_log, transfer_polynomials, PhaseReport, ShiftClass, ShiftMember,
    TransferPolynomial,
};
pub use sequences::{
    berlekamp_massey, lfsr_generate, minimal_polynomial_of_seq, seq_period, BitSeq, Lfsr,
    LinearComplexity,
};
pub use shrinker::{sg_generate, sg_predict, shrink_streams, verify_annihilator, ShrinkingGenerator, SgPrediction};
