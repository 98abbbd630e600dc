//! The shrinking generator and closed-form predictions for its output.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gf2::{is_primitive, BitPoly};
use crate::modeler::coset_polynomial;
use crate::sequences::{annihilates, BitSeq, Lfsr};

/// Keeps `b_i` exactly where `a_i = 1`.
pub fn shrink_streams(a: &[bool], b: &[bool]) -> Result<BitSeq> {
    if a.len() != b.len() {
        return invalid(format!(
            "control stream has {} bits, data stream has {}",
            a.len(),
            b.len()
        ));
    }
    Ok(a.iter().zip(b).filter(|(&ai, _)| ai).map(|(_, &bi)| bi).collect())
}

/// Control register `R1` decimating data register `R2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShrinkingGenerator {
    control: Lfsr,
    data: Lfsr,
}

impl ShrinkingGenerator {
    /// Both feedback polynomials must be primitive and the register lengths
    /// coprime, otherwise the period formula does not hold.
    pub fn new(control: Lfsr, data: Lfsr) -> Result<Self> {
        for (name, reg) in [("control", &control), ("data", &data)] {
            if reg.is_empty() || !is_primitive(reg.feedback())? {
                return invalid(format!(
                    "{name} register feedback {} is not primitive",
                    reg.feedback()
                ));
            }
        }
        if gcd(control.len(), data.len()) != 1 {
            return invalid(format!(
                "register lengths {} and {} are not coprime",
                control.len(),
                data.len()
            ));
        }
        Ok(ShrinkingGenerator { control, data })
    }

    pub fn control(&self) -> &Lfsr {
        &self.control
    }

    pub fn data(&self) -> &Lfsr {
        &self.data
    }

    pub fn next_bit(&mut self) -> Result<bool> {
        if self.control.is_zero() {
            return Err(Error::StalledGenerator);
        }
        loop {
            let a = self.control.step();
            let b = self.data.step();
            if a {
                return Ok(b);
            }
        }
    }

    pub fn generate(&mut self, n: usize) -> Result<BitSeq> {
        (0..n).map(|_| self.next_bit()).collect()
    }
}

/// First `n` shrunken bits, leaving the caller's generator untouched.
pub fn sg_generate(sg: &ShrinkingGenerator, n: usize) -> Result<BitSeq> {
    sg.clone().generate(n)
}

/// Closed-form properties of the shrunken sequence.
///
/// `lc_lower` and the first entry of `exponent_range` are strict bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SgPrediction {
    #[serde(rename = "T")]
    pub period: u128,
    pub ones: u128,
    pub lc_lower: u128,
    pub lc_upper: u128,
    /// Base `P(D)` of the characteristic polynomial `P(D)^N`.
    #[serde(rename = "P")]
    pub charpoly_base: BitPoly,
    #[serde(rename = "N_range")]
    pub exponent_range: (u128, u128),
}

/// Predicts period, weight, linear-complexity bounds and characteristic
/// polynomial of a shrinking generator from `L1` and the characteristic
/// polynomial `p2` of `R2`.
pub fn sg_predict(l1: usize, l2: usize, p2: &BitPoly) -> Result<SgPrediction> {
    if l1 < 2 {
        return invalid("L1 >= 2 required (L1 = 1 gives the undecimated R2 stream)");
    }
    if l1 > 64 {
        return Err(Error::Unsupported(format!("L1 = {l1} exceeds 64")));
    }
    if p2.degree() != Some(l2) {
        return invalid(format!("P2 = {p2} does not have degree L2 = {l2}"));
    }
    if !is_primitive(p2)? {
        return invalid(format!("P2 = {p2} is not primitive"));
    }
    if gcd(l1, l2) != 1 {
        return invalid(format!("gcd(L1, L2) = gcd({l1}, {l2}) != 1"));
    }
    let charpoly_base = coset_polynomial(p2, l1)?;
    let half = 1u128 << (l1 - 1);
    let quarter = 1u128 << (l1 - 2);
    Ok(SgPrediction {
        period: ((1u128 << l2) - 1) * half,
        ones: (1u128 << (l2 - 1)) * half,
        lc_lower: l2 as u128 * quarter,
        lc_upper: l2 as u128 * half,
        charpoly_base,
        exponent_range: (quarter, half),
    })
}

/// True iff `s` satisfies the recurrence with characteristic polynomial
/// `P(E)^(2^(L1-1))`.
pub fn verify_annihilator(s: &[bool], p: &BitPoly, l1: usize) -> Result<bool> {
    if l1 == 0 {
        return invalid("L1 >= 1 required");
    }
    let mut q = p.clone();
    for _ in 1..l1 {
        q = q.square();
    }
    annihilates(&q, s)
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
