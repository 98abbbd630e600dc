//! Phaseshift analysis of automaton cell sequences.
//!
//! Writing `S` for the shift operator (`S X_i(t) = X_i(t+1)`), the rule of the
//! last cell gives `S X_n = X_(n-1) + d_n X_n`, and solving each rule for its
//! left neighbour expresses every cell as `X_i = π_i(S) X_n`. Two cells carry
//! the same sequence up to a delay `e` exactly when `π_i = S^e π_j` modulo the
//! characteristic polynomial `M` of the automaton; `e` is a discrete logarithm
//! to base `S`, found here with an explicit table of the orbit `S^e π_j mod M`.
//! The table grows with the order of `S`, which is fine for automata of a few
//! dozen cells but not for cryptographic sizes.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gf2::BitPoly;
use crate::modeler::{ca_charpoly, RuleVector};

/// Orbits longer than this are refused.
pub const MAX_ORBIT: usize = 1 << 22;

/// `X_cell = poly(S) X_reference`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferPolynomial {
    pub cell: usize,
    pub reference: usize,
    pub poly: BitPoly,
}

fn transfer_chain(rv: &RuleVector) -> Vec<BitPoly> {
    let n = rv.len();
    // pis[i] = π_(i+1); pis[n] = 0 stands for the null cell beyond the edge.
    let mut pis = vec![BitPoly::zero(); n + 1];
    pis[n - 1] = BitPoly::one();
    for i in (1..n).rev() {
        // π_i = (S + d_(i+1)) π_(i+1) + π_(i+2), 0-based: pis[i-1] from pis[i], pis[i+1].
        let mut next = pis[i].shl(1);
        if rv.is_150(i) {
            next += &pis[i];
        }
        next += &pis[i + 1];
        pis[i - 1] = next;
    }
    pis.truncate(n);
    pis
}

/// Transfer polynomials of every cell with respect to cell `n`.
pub fn transfer_polynomials(rv: &RuleVector) -> Vec<TransferPolynomial> {
    let n = rv.len();
    transfer_chain(rv)
        .into_iter()
        .enumerate()
        .map(|(i, poly)| TransferPolynomial {
            cell: i + 1,
            reference: n,
            poly,
        })
        .collect()
}

/// `(S + d_1) π_1 + π_2`: the rule of cell 1 closing the chain. Equals the
/// characteristic polynomial of the automaton.
pub fn transfer_closure(rv: &RuleVector) -> BitPoly {
    let pis = transfer_chain(rv);
    let mut out = pis[0].shl(1);
    if rv.is_150(0) {
        out += &pis[0];
    }
    if let Some(p2) = pis.get(1) {
        out += p2;
    }
    out
}

/// Map from residue to least exponent over the orbit `S^e base mod m`.
fn orbit(base: &BitPoly, m: &BitPoly) -> Result<HashMap<BitPoly, u64>> {
    let mut seen = HashMap::new();
    let mut cur = base.rem(m)?;
    let mut e = 0u64;
    while !seen.contains_key(&cur) {
        if seen.len() >= MAX_ORBIT {
            return Err(Error::Unsupported(format!(
                "order of S modulo {m} exceeds {MAX_ORBIT}"
            )));
        }
        seen.insert(cur.clone(), e);
        cur = cur.shl(1).rem(m)?;
        e += 1;
    }
    Ok(seen)
}

/// Least `e >= 0` with `S^e = pi (mod m)`, or `None` when `pi` is not a power
/// of `S`. A `pi` divisible by `m` is reported as [`Error::ZeroOperator`].
pub fn shift_log(pi: &BitPoly, m: &BitPoly) -> Result<Option<u64>> {
    if m.degree().is_none_or(|d| d == 0) {
        return invalid("modulus must have degree >= 1");
    }
    let target = pi.rem(m)?;
    if target.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let mut cur = BitPoly::one().rem(m)?;
    let mut seen = std::collections::HashSet::new();
    let mut e = 0u64;
    while seen.insert(cur.clone()) {
        if cur == target {
            return Ok(Some(e));
        }
        if seen.len() > MAX_ORBIT {
            return Err(Error::Unsupported(format!(
                "order of S modulo {m} exceeds {MAX_ORBIT}"
            )));
        }
        cur = cur.shl(1).rem(m)?;
        e += 1;
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftMember {
    pub cell: usize,
    /// `X_cell(t) = X_reference(t + shift)`.
    pub shift: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftClass {
    pub reference: usize,
    /// Reference first (shift 0), then the other cells in increasing order.
    pub members: Vec<ShiftMember>,
}

impl ShiftClass {
    pub fn cells(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|m| m.cell)
    }

    pub fn shift_of(&self, cell: usize) -> Option<u64> {
        self.members.iter().find(|m| m.cell == cell).map(|m| m.shift)
    }
}

/// Grouping of cells into classes carrying shifted copies of one sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub charpoly: BitPoly,
    /// Every cell appears in exactly one class; singletons included.
    pub classes: Vec<ShiftClass>,
    /// Cells whose class is a singleton.
    pub unmatched: Vec<usize>,
}

impl PhaseReport {
    pub fn class_of(&self, cell: usize) -> Option<&ShiftClass> {
        self.classes.iter().find(|c| c.shift_of(cell).is_some())
    }
}

/// Classes of shift-equivalent cells. Within a class the reference is the
/// member from which the other members lag least in total (ties go to the
/// lowest cell index); when `S` is not invertible modulo the characteristic
/// polynomial the lowest-index cell is used and shifts run forward from it.
pub fn phase_report(rv: &RuleVector) -> Result<PhaseReport> {
    let n = rv.len();
    let m = ca_charpoly(rv);
    let pis: Vec<BitPoly> = transfer_chain(rv)
        .iter()
        .map(|p| p.rem(&m))
        .collect::<Result<_>>()?;
    let invertible = m.coeff(0);
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for c in 0..n {
        if assigned[c] {
            continue;
        }
        let table = orbit(&pis[c], &m)?;
        let cycle = table.len() as u64;
        let mut members: Vec<(usize, u64)> = Vec::new();
        for i in c..n {
            if assigned[i] {
                continue;
            }
            if let Some(&e) = table.get(&pis[i]) {
                assigned[i] = true;
                members.push((i, e));
            }
        }
        let (ref_idx, ref_e) = if invertible {
            // Pure cycle: shifts relative to any member are differences mod the cycle.
            members
                .iter()
                .copied()
                .min_by_key(|&(cell, er)| {
                    let total: u64 = members.iter().map(|&(_, e)| (e + cycle - er) % cycle).sum();
                    (total, cell)
                })
                .expect("class contains its seed cell")
        } else {
            members[0]
        };
        let mut out: Vec<ShiftMember> = members
            .iter()
            .map(|&(cell, e)| ShiftMember {
                cell: cell + 1,
                shift: if invertible { (e + cycle - ref_e) % cycle } else { e },
            })
            .collect();
        out.sort_by_key(|mbr| (mbr.cell != ref_idx + 1, mbr.cell));
        classes.push(ShiftClass {
            reference: ref_idx + 1,
            members: out,
        });
    }
    let mut unmatched: Vec<usize> = classes
        .iter()
        .filter(|c| c.members.len() == 1)
        .map(|c| c.reference)
        .collect();
    unmatched.sort_unstable();
    Ok(PhaseReport {
        charpoly: m,
        classes,
        unmatched,
    })
}
