//! Deterministic inputs shared by the benchmarks.

use shrinkca::{BitPoly, CaState, Lfsr, RuleVector, ShrinkingGenerator};

/// Primitive characteristic polynomials of `R2` used for model sizes.
pub const DATA_POLYS: [(usize, &str); 3] = [
    (5, "1+D+D^3+D^4+D^5"),
    (17, "1+D^3+D^17"),
    (31, "1+D^3+D^31"),
];

/// Reproducible pseudo-random bits (xorshift64).
pub fn bits(n: usize, seed: u64) -> Vec<bool> {
    let mut x = seed.max(1);
    (0..n)
        .map(|_| {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            x & 1 == 1
        })
        .collect()
}

pub fn poly_of_degree(d: usize, seed: u64) -> BitPoly {
    let mut p = BitPoly::from_coeffs(bits(d, seed));
    p.set_coeff(d, true);
    p
}

pub fn rules(n: usize, seed: u64) -> RuleVector {
    RuleVector::from_flags(bits(n, seed)).expect("n >= 1")
}

pub fn state(n: usize, seed: u64) -> CaState {
    CaState::from_bits(&bits(n, seed))
}

/// The `(L1, P2, keystream)` triple an attacker would hold: a generator with
/// control register `1+D+D^3` (or `1+D^2+D^5` when `l1 = 5`) and `window_bits` of its output.
pub fn intercepted(l1: usize, p2: &str, window_bits: usize) -> (usize, BitPoly, Vec<bool>) {
    let p2: BitPoly = p2.parse().expect("literal polynomial");
    let l2 = p2.degree().expect("nonzero");
    let control = match l1 {
        3 => "1+D+D^3",
        5 => "1+D^2+D^5",
        _ => panic!("no control polynomial for L1 = {l1}"),
    };
    let mut seed1 = vec![false; l1];
    seed1[0] = true;
    let mut seed2 = vec![false; l2];
    seed2[l2 - 1] = true;
    let r1 = Lfsr::new(control.parse().unwrap(), &seed1).unwrap();
    let r2 = Lfsr::from_characteristic(&p2, &seed2).unwrap();
    let mut sg = ShrinkingGenerator::new(r1, r2).unwrap();
    (l1, p2, sg.generate(window_bits).unwrap().into_inner())
}
