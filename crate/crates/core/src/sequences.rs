//! Binary sequences, LFSR simulation and linear-complexity measurement.
//!
//! Register orientation follows the usual Fibonacci drawing: the register is
//! written `(s_1, ..., s_L)`, the rightmost stage `s_L` is emitted first, and
//! the new bit entering at `s_1` is `sum c_k * s_k` for the feedback
//! (connection) polynomial `1 + c_1 D + ... + c_L D^L`. Written as a
//! recurrence on the output stream, `a_t = sum_k c_k a_(t-k)`.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::gf2::BitPoly;

/// A finite binary sequence; index 0 is the earliest bit in time.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitSeq(Vec<bool>);

impl BitSeq {
    pub fn new() -> Self {
        BitSeq(Vec::new())
    }

    pub fn zeros(n: usize) -> Self {
        BitSeq(vec![false; n])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitSeq(bits)
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn is_all_zero(&self) -> bool {
        !self.0.iter().any(|&b| b)
    }

    pub fn into_inner(self) -> Vec<bool> {
        self.0
    }

    /// Bits `start..end` as a new sequence.
    pub fn window(&self, start: usize, end: usize) -> BitSeq {
        BitSeq(self.0[start..end].to_vec())
    }

    pub fn reversed(&self) -> BitSeq {
        BitSeq(self.0.iter().rev().copied().collect())
    }
}

impl Deref for BitSeq {
    type Target = [bool];

    fn deref(&self) -> &[bool] {
        &self.0
    }
}

impl From<Vec<bool>> for BitSeq {
    fn from(bits: Vec<bool>) -> Self {
        BitSeq(bits)
    }
}

impl FromIterator<bool> for BitSeq {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        BitSeq(iter.into_iter().collect())
    }
}

impl fmt::Display for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSeq({self})")
    }
}

impl FromStr for BitSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("bad bit `{other}` in `{s}`"))),
            })
            .collect()
    }
}

impl Serialize for BitSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitSeq {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A Fibonacci linear feedback shift register.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lfsr {
    feedback: BitPoly,
    taps: Vec<usize>,
    // Upcoming output bits in time order: front is emitted next.
    pending: VecDeque<bool>,
}

impl Lfsr {
    /// Register with feedback polynomial of degree `L` and a seed written as
    /// `(s_1, ..., s_L)`; `s_L` is emitted first.
    pub fn new(feedback: BitPoly, seed: &[bool]) -> Result<Self> {
        if feedback.degree() != Some(seed.len()) {
            return invalid(format!(
                "feedback {feedback} has degree {:?} but the seed has {} stages",
                feedback.degree(),
                seed.len()
            ));
        }
        Lfsr::with_length(feedback, seed.len(), seed)
    }

    /// Like [`Lfsr::new`] but allows a feedback polynomial of degree below the
    /// register length, as produced by Berlekamp-Massey.
    pub fn with_length(feedback: BitPoly, length: usize, seed: &[bool]) -> Result<Self> {
        if !feedback.coeff(0) {
            return invalid(format!("feedback {feedback} must have constant term 1"));
        }
        if feedback.degree().unwrap_or(0) > length || seed.len() != length {
            return invalid(format!(
                "feedback {feedback} and seed of {} stages do not fit a length-{length} register",
                seed.len()
            ));
        }
        let taps = feedback.exponents().filter(|&k| k > 0).collect();
        Ok(Lfsr {
            feedback,
            taps,
            pending: seed.iter().rev().copied().collect(),
        })
    }

    /// Register whose first `length` output bits are `prefix` (time order).
    pub fn from_prefix(feedback: BitPoly, length: usize, prefix: &[bool]) -> Result<Self> {
        let seed: Vec<bool> = prefix.iter().rev().copied().collect();
        Lfsr::with_length(feedback, length, &seed)
    }

    /// Register whose output satisfies the recurrence with the given
    /// characteristic polynomial (the reciprocal of the feedback polynomial).
    pub fn from_characteristic(charpoly: &BitPoly, seed: &[bool]) -> Result<Self> {
        if !charpoly.coeff(0) {
            return invalid(format!("characteristic polynomial {charpoly} is divisible by D"));
        }
        Lfsr::new(charpoly.reverse(), seed)
    }

    pub fn feedback(&self) -> &BitPoly {
        &self.feedback
    }

    pub fn len(&self) -> usize {
        self.pending.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pending.is_empty()
    }

    /// Current register contents written `(s_1, ..., s_L)`.
    pub fn state(&self) -> BitSeq {
        self.pending.iter().rev().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        !self.pending.iter().any(|&b| b)
    }

    pub fn step(&mut self) -> bool {
        let len = self.pending.len();
        if len == 0 {
            return false;
        }
        let next = self
            .taps
            .iter()
            .fold(false, |acc, &k| acc ^ self.pending[len - k]);
        let out = self.pending.pop_front().expect("nonempty register");
        self.pending.push_back(next);
        out
    }

    pub fn generate(&mut self, n: usize) -> BitSeq {
        (0..n).map(|_| self.step()).collect()
    }
}

impl Iterator for Lfsr {
    type Item = bool;

    fn next(&mut self) -> Option<bool> {
        Some(self.step())
    }
}

/// First `n` output bits of a register, leaving the caller's copy untouched.
pub fn lfsr_generate(lfsr: &Lfsr, n: usize) -> BitSeq {
    lfsr.clone().generate(n)
}

/// Smallest `t` with `s[i] == s[i + t]` for every valid `i`, provided the
/// window holds at least two full periods. `None` means the period cannot be
/// determined from this window.
pub fn seq_period(s: &[bool]) -> Option<usize> {
    let n = s.len();
    if n == 0 {
        return None;
    }
    // Smallest period of a word = length - longest proper border.
    let mut border = vec![0usize; n];
    for i in 1..n {
        let mut k = border[i - 1];
        while k > 0 && s[i] != s[k] {
            k = border[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        border[i] = k;
    }
    let period = n - border[n - 1];
    (2 * period <= n).then_some(period)
}

/// Output of [`berlekamp_massey`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearComplexity {
    pub lc: usize,
    /// Connection polynomial `1 + c_1 D + ... + c_lc D^lc` (degree may be below `lc`).
    pub connection: BitPoly,
}

impl LinearComplexity {
    /// Characteristic polynomial `D^lc * C(1/D)`.
    pub fn characteristic(&self) -> BitPoly {
        self.connection.reciprocal(self.lc)
    }

    /// Register regenerating the sequence this result was computed from.
    pub fn register(&self, s: &[bool]) -> Result<Lfsr> {
        Lfsr::from_prefix(self.connection.clone(), self.lc, &s[..self.lc])
    }
}

pub fn berlekamp_massey(s: &[bool]) -> LinearComplexity {
    let mut c = BitPoly::one();
    let mut b = BitPoly::one();
    let mut lc = 0usize;
    let mut gap = 1usize;
    for i in 0..s.len() {
        let mut d = s[i];
        for k in c.exponents().skip_while(|&k| k == 0) {
            if k > i {
                break;
            }
            d ^= s[i - k];
        }
        if !d {
            gap += 1;
        } else if 2 * lc <= i {
            let prev = c.clone();
            c.add_shifted(&b, gap);
            lc = i + 1 - lc;
            b = prev;
            gap = 1;
        } else {
            c.add_shifted(&b, gap);
            gap += 1;
        }
    }
    LinearComplexity { lc, connection: c }
}

/// Minimal polynomial of `s` in characteristic-polynomial form. Fails with
/// `InsufficientData` unless `s` holds at least `2 * LC` bits, the length at
/// which the shortest register becomes unique.
pub fn minimal_polynomial_of_seq(s: &[bool]) -> Result<BitPoly> {
    let bm = berlekamp_massey(s);
    if 2 * bm.lc > s.len() {
        return Err(Error::InsufficientData(format!(
            "linear complexity {} needs {} bits, window has {}",
            bm.lc,
            2 * bm.lc,
            s.len()
        )));
    }
    Ok(bm.characteristic())
}

/// True iff `sum_k q_k s_(t+k) = 0` for every `t` where the window fits, i.e.
/// `s` satisfies the linear recurrence with characteristic polynomial `q`.
pub fn annihilates(q: &BitPoly, s: &[bool]) -> Result<bool> {
    let deg = match q.degree() {
        Some(d) => d,
        None => return invalid("the zero polynomial annihilates nothing meaningful"),
    };
    if s.len() <= deg {
        return Err(Error::InsufficientData(format!(
            "need at least {} bits to test a degree-{deg} recurrence, have {}",
            deg + 1,
            s.len()
        )));
    }
    let taps: Vec<usize> = q.exponents().collect();
    Ok((0..s.len() - deg).all(|t| !taps.iter().fold(false, |acc, &k| acc ^ s[t + k])))
}
