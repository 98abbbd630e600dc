//! Keystream reconstruction from a short intercepted window.
//!
//! Once the shrinking generator is modelled by a 90/150 automaton of length
//! `n = L2 * 2^(L1-1)`, its keystream is the trace of an end cell. Knowing `n`
//! consecutive bits of that trace fixes the whole initial state: each rule
//! `x_(j+1)(t+1) = x_j(t) + d_(j+1) x_(j+1)(t) + x_(j+2)(t)` can be solved for
//! the left neighbour, so column `j` follows from columns `j+1` and `j+2`,
//! one entry shorter each time. Berlekamp-Massey would need `2n` bits for the
//! same sequence when its linear complexity reaches `n`.
//!
//! The linear consistency test (exhaustive search over the seeds of `R2`
//! against the same linear model) is not implemented.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::{cell_trace, CaState};
use crate::error::{invalid, Error, Result};
use crate::gf2::BitPoly;
use crate::modeler::{model_sg, RuleVector};
use crate::sequences::{berlekamp_massey, BitSeq};

fn derive_left(rv: &RuleVector, j: usize, right: &[bool], right2: Option<&[bool]>) -> Vec<bool> {
    // right = column of cell j+1 (len j+1), right2 = column of cell j+2 (len j+2).
    let d = rv.is_150(j); // cell j+1 has 0-based index j
    (0..j)
        .map(|t| right[t + 1] ^ (d && right[t]) ^ right2.is_some_and(|c| c[t]))
        .collect()
}

/// Initial state whose rightmost-cell trace starts with `window`
/// (`window.len()` must equal the automaton length).
pub fn recover_state(rv: &RuleVector, window: &[bool]) -> Result<CaState> {
    let n = rv.len();
    if window.len() != n {
        return invalid(format!("window has {} bits, automaton has {n} cells", window.len()));
    }
    let mut state = CaState::zeros(n);
    state.set(n - 1, window[0]);
    let mut right2: Option<Vec<bool>> = None;
    let mut right = window.to_vec();
    for j in (1..n).rev() {
        let col = derive_left(rv, j, &right, right2.as_deref());
        state.set(j - 1, col[0]);
        right2 = Some(std::mem::replace(&mut right, col));
    }
    Ok(state)
}

/// The full reconstruction triangle: row `t` holds cells `t+1..=n` at time `t`.
pub fn reconstruction_triangle(rv: &RuleVector, window: &[bool]) -> Result<Vec<BitSeq>> {
    let n = rv.len();
    if window.len() != n {
        return invalid(format!("window has {} bits, automaton has {n} cells", window.len()));
    }
    // columns[j - 1] = column of cell j, of length j.
    let mut columns: Vec<Vec<bool>> = vec![Vec::new(); n];
    columns[n - 1] = window.to_vec();
    for j in (1..n).rev() {
        let right2 = (j + 1 < n).then(|| columns[j + 1].as_slice());
        columns[j - 1] = derive_left(rv, j, &columns[j], right2);
    }
    Ok((0..n)
        .map(|t| (t..n).map(|c| columns[c][t]).collect())
        .collect())
}

/// Recovers the state from the first `n` bits of `window`, checks every
/// further window bit against the model and returns `horizon` keystream bits.
pub fn recover_keystream(rv: &RuleVector, window: &[bool], horizon: usize) -> Result<BitSeq> {
    let n = rv.len();
    if window.len() < n {
        return Err(Error::WindowTooShort {
            needed: n,
            got: window.len(),
        });
    }
    let state = recover_state(rv, &window[..n])?;
    let total = horizon.max(window.len());
    let trace = cell_trace(rv, &state, n, total)?;
    if let Some(index) = (n..window.len()).find(|&i| trace[i] != window[i]) {
        return Err(Error::VerificationMismatch { index });
    }
    Ok(trace.window(0, horizon))
}

/// Which end cell of the automaton carries the keystream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Rightmost,
    Leftmost,
}

/// Result of [`attack_sg`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackReport {
    #[serde(rename = "P")]
    pub p: BitPoly,
    /// The model automaton that reproduced the window.
    pub rules: RuleVector,
    /// `"a"` or `"b"`, the model output the rules came from.
    pub candidate: char,
    pub orientation: Orientation,
    /// Initial state in the cell order of `rules`.
    pub state: CaState,
    pub bits_required: usize,
    /// `2 * LC`: the bits Berlekamp-Massey needs for the same stream.
    pub bm_equivalent: usize,
    pub verified_bits: usize,
    /// The window is all zero: only the trivial solution was recovered.
    pub degenerate: bool,
    pub keystream: BitSeq,
}

impl fmt::Display for AttackReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = match self.orientation {
            Orientation::Rightmost => self.rules.len(),
            Orientation::Leftmost => 1,
        };
        writeln!(f, "P(D)            {}", self.p)?;
        writeln!(f, "automaton       {} (candidate {})", self.rules, self.candidate)?;
        writeln!(f, "keystream cell  {cell} ({:?})", self.orientation)?;
        writeln!(f, "initial state   {}", self.state)?;
        writeln!(f, "bits required   {} (Berlekamp-Massey: {})", self.bits_required, self.bm_equivalent)?;
        writeln!(f, "verified bits   {}", self.verified_bits)?;
        if self.degenerate {
            writeln!(f, "note            degenerate stream: all-zero window")?;
        }
        writeln!(f, "linear consistency test: not performed")?;
        write!(f, "keystream       {}", self.keystream)
    }
}

/// Models the generator, then tries both automata in both orientations and
/// returns the first whose regenerated stream matches every supplied bit.
pub fn attack_sg(l1: usize, p2: &BitPoly, window: &[bool], horizon: usize) -> Result<AttackReport> {
    let model = model_sg(l1, p2)?;
    let n = model.length;
    if window.len() < n {
        return Err(Error::WindowTooShort {
            needed: n,
            got: window.len(),
        });
    }
    for (candidate, rules) in [('a', &model.rules_a), ('b', &model.rules_b)] {
        for orientation in [Orientation::Rightmost, Orientation::Leftmost] {
            let used = match orientation {
                Orientation::Rightmost => rules.clone(),
                Orientation::Leftmost => rules.reversed(),
            };
            let keystream = match recover_keystream(&used, window, horizon) {
                Ok(ks) => ks,
                Err(Error::VerificationMismatch { .. }) => continue,
                Err(e) => return Err(e),
            };
            let state = recover_state(&used, &window[..n])?;
            // LC <= n, so 2n regenerated bits determine it.
            let lc = berlekamp_massey(&cell_trace(&used, &state, n, 2 * n)?).lc;
            let state = match orientation {
                Orientation::Rightmost => state,
                Orientation::Leftmost => state.reversed(),
            };
            return Ok(AttackReport {
                p: model.p.clone(),
                rules: rules.clone(),
                candidate,
                orientation,
                state,
                bits_required: n,
                bm_equivalent: 2 * lc,
                verified_bits: window.len() - n,
                degenerate: window.iter().all(|&b| !b),
                keystream,
            });
        }
    }
    Err(Error::ModelMismatch)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(s: &str) -> RuleVector {
        s.parse().unwrap()
    }

    fn bits(s: &str) -> BitSeq {
        s.parse().unwrap()
    }

    fn p(s: &str) -> BitPoly {
        s.parse().unwrap()
    }

    #[test]
    fn table_state() {
        let s = recover_state(&rv("0111001110"), &bits("0101101001")).unwrap();
        assert_eq!(s.to_string(), "0001110110");
        assert!(recover_state(&rv("0111001110"), &bits("0101")).is_err());
        assert!(recover_state(&rv("0101"), &bits("0000")).unwrap().is_zero());
    }

    #[test]
    fn keystream_horizons() {
        let r = rv("0111001110");
        let w = bits("0101101001");
        assert_eq!(recover_keystream(&r, &w, 10).unwrap(), w);
        let full = recover_keystream(&r, &w, 62).unwrap();
        assert!(full.starts_with(&w));
        assert!(matches!(
            recover_keystream(&r, &w[..9], 20),
            Err(Error::WindowTooShort { needed: 10, got: 9 })
        ));
        let mut bad = full.window(0, 14).into_inner();
        bad[12] = !bad[12];
        assert_eq!(
            recover_keystream(&r, &bad, 20),
            Err(Error::VerificationMismatch { index: 12 })
        );
    }

    #[test]
    fn attack_on_worked_window() {
        let p2 = p("1+D+D^3+D^4+D^5");
        let full = recover_keystream(&rv("0111001110"), &bits("0101101001"), 62).unwrap();
        let report = attack_sg(2, &p2, &full[..12], 62).unwrap();
        assert_eq!(report.bits_required, 10);
        assert_eq!(report.bm_equivalent, 20);
        assert_eq!(report.keystream, full);
        assert!(!report.degenerate);
    }

    #[test]
    fn zero_window_is_degenerate() {
        let report = attack_sg(2, &p("1+D+D^3+D^4+D^5"), &[false; 12], 20).unwrap();
        assert!(report.degenerate);
        assert!(report.state.is_zero());
        assert!(report.keystream.is_all_zero());
    }

    #[test]
    fn inconsistent_window() {
        // Period-3 pattern is not annihilated by (1+D^2+D^5)^2 nor its reversal.
        let w: Vec<bool> = (0..40).map(|i| i % 3 == 0).collect();
        assert_eq!(
            attack_sg(2, &p("1+D+D^3+D^4+D^5"), &w, 40),
            Err(Error::ModelMismatch)
        );
    }
}
