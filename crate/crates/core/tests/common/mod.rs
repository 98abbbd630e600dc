//! Naive reference implementations used as test oracles. Polynomials are
//! plain `u128` masks (bit k = coefficient of D^k), states and sequences are
//! `Vec<bool>`; nothing here calls into the library's arithmetic.
#![allow(dead_code)]

use rand::Rng;
use shrinkca::{BitPoly, CaState, RuleVector};

pub fn deg(p: u128) -> Option<u32> {
    (p != 0).then(|| 127 - p.leading_zeros())
}

pub fn clmul(a: u128, b: u128) -> u128 {
    let mut out = 0u128;
    for i in 0..128 {
        if (b >> i) & 1 == 1 {
            out ^= a << i;
        }
    }
    out
}

/// Schoolbook long division.
pub fn divmod(mut a: u128, m: u128) -> (u128, u128) {
    let dm = deg(m).expect("nonzero divisor");
    let mut q = 0u128;
    while let Some(da) = deg(a) {
        if da < dm {
            break;
        }
        q |= 1 << (da - dm);
        a ^= m << (da - dm);
    }
    (q, a)
}

pub fn pmod(a: u128, m: u128) -> u128 {
    divmod(a, m).1
}

pub fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    // Shift-and-add keeps every intermediate below 2 * deg(m).
    let mut acc = 0u128;
    let mut x = pmod(a, m);
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= x;
        }
        x = pmod(x << 1, m);
        b >>= 1;
    }
    acc
}

/// Multiplicative order of D modulo `m`, by stepping through the powers.
pub fn order_of_x(m: u128) -> Option<u64> {
    let d = deg(m)?;
    if d == 0 || m & 1 == 0 {
        return None;
    }
    let mut x = pmod(2, m);
    let mut k = 1u64;
    while x != 1 {
        x = pmod(x << 1, m);
        k += 1;
        if k > 1u64 << d {
            return None;
        }
    }
    Some(k)
}

pub fn is_irreducible_naive(p: u128) -> bool {
    let Some(d) = deg(p) else { return false };
    if d == 0 {
        return false;
    }
    (2u128..1 << (d / 2 + 1)).all(|q| deg(q).unwrap() > d / 2 || pmod(p, q) != 0)
}

pub fn irreducibles(d: u32) -> Vec<u128> {
    (1u128 << d..1 << (d + 1)).filter(|&p| is_irreducible_naive(p)).collect()
}

pub fn primitives(d: u32) -> Vec<u128> {
    irreducibles(d)
        .into_iter()
        .filter(|&p| order_of_x(p) == Some((1u64 << d) - 1))
        .collect()
}

pub fn bp(p: u128) -> BitPoly {
    BitPoly::from_u128(p)
}

pub fn mask(p: &BitPoly) -> u128 {
    p.to_u128().expect("polynomial fits in 128 bits")
}

/// Sequence satisfying `sum_k q_k s_(t+k) = 0` from the initial `deg(q)` terms.
pub fn recurrence(q: u128, init: &[bool], n: usize) -> Vec<bool> {
    let d = deg(q).unwrap() as usize;
    assert_eq!(init.len(), d);
    let mut s = init.to_vec();
    while s.len() < n {
        let t = s.len() - d;
        let next = (0..d).filter(|&k| (q >> k) & 1 == 1).fold(false, |a, k| a ^ s[t + k]);
        s.push(next);
    }
    s.truncate(n);
    s
}

/// One cell-by-cell step with null boundaries; `rules[i]` true means rule 150.
pub fn step_naive(rules: &[bool], s: &[bool]) -> Vec<bool> {
    let n = s.len();
    (0..n)
        .map(|i| {
            let l = i > 0 && s[i - 1];
            let r = i + 1 < n && s[i + 1];
            l ^ r ^ (rules[i] && s[i])
        })
        .collect()
}

pub fn traces_naive(rules: &[bool], s: &[bool], steps: usize) -> Vec<Vec<bool>> {
    let n = s.len();
    let mut out = vec![Vec::with_capacity(steps); n];
    let mut cur = s.to_vec();
    for _ in 0..steps {
        for i in 0..n {
            out[i].push(cur[i]);
        }
        cur = step_naive(rules, &cur);
    }
    out
}

/// Characteristic polynomial from the Krylov sequence of the first unit
/// vector: Gaussian elimination finds the dependency among e_1 A^k, k <= n.
pub fn charpoly_krylov(rules: &[bool]) -> u128 {
    let n = rules.len();
    assert!(n < 127);
    let mut v = vec![false; n];
    v[0] = true;
    // Each basis row: (vector, combination mask over k).
    let mut basis: Vec<(Vec<bool>, u128)> = Vec::new();
    for k in 0..=n {
        let mut vec = v.clone();
        let mut comb = 1u128 << k;
        for (bv, bc) in &basis {
            let pivot = bv.iter().position(|&b| b).unwrap();
            if vec[pivot] {
                for (x, y) in vec.iter_mut().zip(bv) {
                    *x ^= *y;
                }
                comb ^= bc;
            }
        }
        if vec.iter().all(|&b| !b) {
            return comb;
        }
        basis.push((vec, comb));
        v = step_naive(rules, &v);
    }
    unreachable!("n + 1 vectors in dimension n are dependent")
}

/// `det(D I + A)` by Laplace expansion along the first row, with polynomial
/// entries. Exponential cost; meant for n <= 9.
pub fn charpoly_det(rules: &[bool]) -> u128 {
    let n = rules.len();
    let entry = |i: usize, j: usize| -> u128 {
        if i == j {
            2 | rules[i] as u128
        } else {
            (i.abs_diff(j) == 1) as u128
        }
    };
    let m: Vec<Vec<u128>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    det(&m)
}

fn det(m: &[Vec<u128>]) -> u128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut acc = 0u128;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<u128>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
            .collect();
        acc ^= clmul(m[0][j], det(&minor));
    }
    acc
}

/// Dimension of the span of s, sA, sA^2, ...: equals n exactly when the state
/// is a cyclic vector and its traces reach the full period.
pub fn krylov_rank(rules: &[bool], s: &[bool]) -> usize {
    let n = s.len();
    let mut rows: Vec<Vec<bool>> = Vec::new();
    let mut v = s.to_vec();
    for _ in 0..n {
        let mut w = v.clone();
        for r in &rows {
            let p = r.iter().position(|&b| b).unwrap();
            if w[p] {
                for (x, y) in w.iter_mut().zip(r) {
                    *x ^= *y;
                }
            }
        }
        if w.iter().any(|&b| b) {
            rows.push(w);
            rows.sort_by_key(|r| r.iter().position(|&b| b).unwrap());
        }
        v = step_naive(rules, &v);
    }
    rows.len()
}

/// Smallest p > 0 with `s` returning to its start after p steps.
pub fn state_period(rules: &[bool], s: &[bool], cap: usize) -> Option<usize> {
    let mut cur = step_naive(rules, s);
    for p in 1..=cap {
        if cur == s {
            return Some(p);
        }
        cur = step_naive(rules, &cur);
    }
    None
}

pub fn random_bits<R: Rng>(rng: &mut R, n: usize) -> Vec<bool> {
    (0..n).map(|_| rng.gen()).collect()
}

pub fn random_nonzero<R: Rng>(rng: &mut R, n: usize) -> Vec<bool> {
    loop {
        let v = random_bits(rng, n);
        if v.iter().any(|&b| b) {
            return v;
        }
    }
}

pub fn rule_vector(flags: &[bool]) -> RuleVector {
    RuleVector::from_flags(flags.iter().copied()).unwrap()
}

pub fn state(bits: &[bool]) -> CaState {
    CaState::from_bits(bits)
}
