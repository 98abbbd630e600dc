//! Null-boundary hybrid 90/150 automata.
//!
//! States are packed 64 cells to a word; one step is two whole-row shifts, a
//! masked self term and three XORs:
//! `next = (s << 1) ^ (s >> 1) ^ (s & rule150_mask)`, truncated to `n` cells.
//! Cells are numbered 1..=n in the public API, matching the usual
//! `(x_1, ..., x_n)` notation; bit `i` of the packed row holds cell `i + 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::modeler::RuleVector;
use crate::sequences::BitSeq;

/// Snapshot of the `n` cells of an automaton.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CaState {
    words: Vec<u64>,
    len: usize,
}

impl CaState {
    pub fn zeros(n: usize) -> Self {
        CaState {
            words: vec![0; n.div_ceil(64)],
            len: n,
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut s = CaState::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                s.words[i / 64] |= 1 << (i % 64);
            }
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Content of the cell at 0-based index `i`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "cell index {i} out of range");
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "cell index {i} out of range");
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn bits(&self) -> BitSeq {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn reversed(&self) -> CaState {
        CaState::from_bits(&self.bits().reversed())
    }

    pub fn xor(&self, other: &CaState) -> CaState {
        assert_eq!(self.len, other.len);
        CaState {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect(),
            len: self.len,
        }
    }

    /// GF(2) dot product.
    pub fn dot(&self, other: &CaState) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    fn clear_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

impl fmt::Display for CaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits().fmt(f)
    }
}

impl fmt::Debug for CaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CaState({self})")
    }
}

impl FromStr for CaState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits: BitSeq = s.parse()?;
        Ok(CaState::from_bits(&bits))
    }
}

impl Serialize for CaState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CaState {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn step_packed(mask: &[u64], s: &CaState) -> CaState {
    let w = &s.words;
    let k = w.len();
    let mut out = vec![0u64; k];
    for i in 0..k {
        // Cell j receives its left neighbour j-1 and right neighbour j+1.
        let from_left = (w[i] << 1) | if i > 0 { w[i - 1] >> 63 } else { 0 };
        let from_right = (w[i] >> 1) | if i + 1 < k { w[i + 1] << 63 } else { 0 };
        out[i] = from_left ^ from_right ^ (w[i] & mask[i]);
    }
    let mut next = CaState { words: out, len: s.len };
    next.clear_tail();
    next
}

/// One synchronous update with null boundaries.
pub fn ca_step(rv: &RuleVector, s: &CaState) -> Result<CaState> {
    check_len(rv, s)?;
    Ok(step_packed(rv.mask(), s))
}

/// States at times `0..steps` (the initial state first).
pub fn evolve(rv: &RuleVector, s: &CaState, steps: usize) -> Result<Vec<CaState>> {
    check_len(rv, s)?;
    let mut out = Vec::with_capacity(steps);
    let mut cur = s.clone();
    for _ in 0..steps {
        let next = step_packed(rv.mask(), &cur);
        out.push(cur);
        cur = next;
    }
    Ok(out)
}

/// Contents of `cell` (1-based) at times `0..n`.
pub fn cell_trace(rv: &RuleVector, s: &CaState, cell: usize, n: usize) -> Result<BitSeq> {
    check_len(rv, s)?;
    if cell == 0 || cell > rv.len() {
        return invalid(format!("cell {cell} outside 1..={}", rv.len()));
    }
    let mut out = BitSeq::new();
    let mut cur = s.clone();
    for t in 0..n {
        out.push(cur.get(cell - 1));
        if t + 1 < n {
            cur = step_packed(rv.mask(), &cur);
        }
    }
    Ok(out)
}

/// Traces of every cell at once: `traces[i]` is cell `i + 1` over `0..n`.
pub fn all_traces(rv: &RuleVector, s: &CaState, n: usize) -> Result<Vec<BitSeq>> {
    let states = evolve(rv, s, n)?;
    Ok((0..rv.len())
        .map(|i| states.iter().map(|st| st.get(i)).collect())
        .collect())
}

fn check_len(rv: &RuleVector, s: &CaState) -> Result<()> {
    if rv.len() != s.len() {
        return invalid(format!(
            "state has {} cells, rule vector has {}",
            s.len(),
            rv.len()
        ));
    }
    Ok(())
}

/// The matrix `A` with `next = state . A`: ones on both off-diagonals and the
/// rule-150 flags on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    rows: Vec<CaState>,
}

impl TransitionMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].get(col)
    }

    pub fn row(&self, i: usize) -> &CaState {
        &self.rows[i]
    }

    /// Row-vector product `s . A`.
    pub fn apply(&self, s: &CaState) -> CaState {
        assert_eq!(s.len(), self.rows.len());
        let mut acc = CaState::zeros(s.len());
        for (i, row) in self.rows.iter().enumerate() {
            if s.get(i) {
                acc = acc.xor(row);
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

pub fn transition_matrix(rv: &RuleVector) -> TransitionMatrix {
    let n = rv.len();
    let rows = (0..n)
        .map(|i| {
            let mut r = CaState::zeros(n);
            if i > 0 {
                r.set(i - 1, true);
            }
            if i + 1 < n {
                r.set(i + 1, true);
            }
            r.set(i, rv.is_150(i));
            r
        })
        .collect();
    TransitionMatrix { rows }
}

/// Right-aligned triangle: row `t` shows cells `t+1..=n`, with the first `t`
/// cells left blank.
pub fn render_triangle(rows: &[BitSeq], width: usize) -> String {
    let mut out = String::new();
    for row in rows {
        let pad = width.saturating_sub(row.len());
        out.push_str(&" ".repeat(pad));
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

/// Evolution rows cut to the triangle shape used when reading a keystream
/// from the rightmost cell: row `t` keeps cells `t+1..=n`.
pub fn triangle_rows(states: &[CaState]) -> Vec<BitSeq> {
    states
        .iter()
        .enumerate()
        .take_while(|(t, s)| *t < s.len())
        .map(|(t, s)| s.bits().window(t, s.len()))
        .collect()
}
