use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A polynomial over GF(2).
///
/// Coefficients are packed little-endian: bit `k` of the word sequence is the
/// coefficient of `D^k`. The word vector never carries trailing zero words, so
/// equality and hashing are structural.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitPoly {
    words: Vec<u64>,
}

impl BitPoly {
    pub fn zero() -> Self {
        BitPoly { words: Vec::new() }
    }

    pub fn one() -> Self {
        BitPoly::from_u64(1)
    }

    /// The indeterminate `D` (also used as the shift operator `S`).
    pub fn x() -> Self {
        BitPoly::from_u64(2)
    }

    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / 64 + 1];
        words[k / 64] = 1 << (k % 64);
        BitPoly { words }
    }

    pub fn from_u64(bits: u64) -> Self {
        let mut p = BitPoly { words: vec![bits] };
        p.normalize();
        p
    }

    pub fn from_u128(bits: u128) -> Self {
        let mut p = BitPoly {
            words: vec![bits as u64, (bits >> 64) as u64],
        };
        p.normalize();
        p
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = BitPoly { words };
        p.normalize();
        p
    }

    /// Builds a polynomial from the degrees of its nonzero terms. Repeated
    /// degrees cancel, as they would in any sum over GF(2).
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = BitPoly::zero();
        for &k in exps {
            p.flip(k);
        }
        p
    }

    /// Builds a polynomial from coefficients listed by ascending degree.
    pub fn from_coeffs<I: IntoIterator<Item = bool>>(coeffs: I) -> Self {
        let mut words = Vec::new();
        for (k, c) in coeffs.into_iter().enumerate() {
            if k % 64 == 0 {
                words.push(0);
            }
            if c {
                words[k / 64] |= 1 << (k % 64);
            }
        }
        BitPoly::from_words(words)
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.words
            .get(k / 64)
            .is_some_and(|w| (w >> (k % 64)) & 1 == 1)
    }

    pub fn set_coeff(&mut self, k: usize, value: bool) {
        if self.coeff(k) != value {
            self.flip(k);
        }
    }

    pub fn flip(&mut self, k: usize) {
        if self.words.len() <= k / 64 {
            self.words.resize(k / 64 + 1, 0);
        }
        self.words[k / 64] ^= 1 << (k % 64);
        self.normalize();
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Degrees of the nonzero terms, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn to_u128(&self) -> Option<u128> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0] as u128),
            2 => Some(self.words[0] as u128 | (self.words[1] as u128) << 64),
            _ => None,
        }
    }

    /// `self ^= other * D^shift`.
    pub fn add_shifted(&mut self, other: &BitPoly, shift: usize) {
        if other.is_zero() {
            return;
        }
        let ws = shift / 64;
        let bs = shift % 64;
        let need = other.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + ws] ^= w << bs;
            if bs > 0 {
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        self.normalize();
    }

    pub fn shl(&self, k: usize) -> BitPoly {
        let mut r = BitPoly::zero();
        r.add_shifted(self, k);
        r
    }

    pub fn mul(&self, other: &BitPoly) -> BitPoly {
        if self.is_zero() || other.is_zero() {
            return BitPoly::zero();
        }
        let mut out = vec![0u64; self.words.len() + other.words.len()];
        for (i, &a) in self.words.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.words.iter().enumerate() {
                let (lo, hi) = clmul64(a, b);
                out[i + j] ^= lo;
                out[i + j + 1] ^= hi;
            }
        }
        BitPoly::from_words(out)
    }

    /// Squaring in characteristic 2 spreads the coefficient bits apart.
    pub fn square(&self) -> BitPoly {
        let mut out = Vec::with_capacity(self.words.len() * 2);
        for &w in &self.words {
            out.push(spread32(w as u32));
            out.push(spread32((w >> 32) as u32));
        }
        BitPoly::from_words(out)
    }

    pub fn pow(&self, mut e: u64) -> BitPoly {
        let mut base = self.clone();
        let mut acc = BitPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn div_rem(&self, divisor: &BitPoly) -> Result<(BitPoly, BitPoly)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::InvalidArgument("division by the zero polynomial".into()))?;
        let mut q = BitPoly::zero();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            q.flip(dr - dd);
            r.add_shifted(divisor, dr - dd);
        }
        Ok((q, r))
    }

    pub fn rem(&self, modulus: &BitPoly) -> Result<BitPoly> {
        let dm = modulus
            .degree()
            .ok_or_else(|| Error::InvalidArgument("zero modulus".into()))?;
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dm {
                break;
            }
            r.add_shifted(modulus, dr - dm);
        }
        Ok(r)
    }

    pub fn divides(&self, other: &BitPoly) -> bool {
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn gcd(&self, other: &BitPoly) -> BitPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    pub fn mul_mod(&self, other: &BitPoly, modulus: &BitPoly) -> Result<BitPoly> {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, e: u128, modulus: &BitPoly) -> Result<BitPoly> {
        let base = self.rem(modulus)?;
        let mut acc = BitPoly::one().rem(modulus)?;
        if e == 0 {
            return Ok(acc);
        }
        for bit in (0..128 - e.leading_zeros()).rev() {
            acc = acc.square().rem(modulus)?;
            if (e >> bit) & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Coefficient reversal with respect to `n`: returns `D^n * p(1/D)`.
    /// Requires `n >= degree`.
    pub fn reciprocal(&self, n: usize) -> BitPoly {
        let mut r = BitPoly::zero();
        for k in self.exponents() {
            assert!(k <= n, "reciprocal length below degree");
            r.flip(n - k);
        }
        r
    }

    /// Reciprocal with respect to the polynomial's own degree.
    pub fn reverse(&self) -> BitPoly {
        match self.degree() {
            Some(d) => self.reciprocal(d),
            None => BitPoly::zero(),
        }
    }
}

fn clmul64(a: u64, b: u64) -> (u64, u64) {
    let mut lo = 0u64;
    let mut hi = 0u64;
    let mut a = a;
    while a != 0 {
        let i = a.trailing_zeros();
        a &= a - 1;
        lo ^= b << i;
        if i > 0 {
            hi ^= b >> (64 - i);
        }
    }
    (lo, hi)
}

fn spread32(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// `(a * b) mod m`.
pub fn poly_mul_mod(a: &BitPoly, b: &BitPoly, m: &BitPoly) -> Result<BitPoly> {
    a.mul_mod(b, m)
}

/// `a^e mod m` by square-and-multiply.
pub fn poly_pow_mod(a: &BitPoly, e: u128, m: &BitPoly) -> Result<BitPoly> {
    a.pow_mod(e, m)
}

impl Add for &BitPoly {
    type Output = BitPoly;

    fn add(self, rhs: &BitPoly) -> BitPoly {
        let mut r = self.clone();
        r += rhs;
        r
    }
}

impl AddAssign<&BitPoly> for BitPoly {
    fn add_assign(&mut self, rhs: &BitPoly) {
        self.add_shifted(rhs, 0);
    }
}

impl Mul for &BitPoly {
    type Output = BitPoly;

    fn mul(self, rhs: &BitPoly) -> BitPoly {
        BitPoly::mul(self, rhs)
    }
}

impl fmt::Display for BitPoly {
    /// Canonical text form: ascending monomial sum, e.g. `1+D^2+D^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, k) in self.exponents().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match k {
                0 => f.write_str("1")?,
                1 => f.write_str("D")?,
                _ => write!(f, "D^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPoly({self})")
    }
}

impl fmt::LowerHex for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            f.write_str("0x")?;
        }
        match self.words.split_last() {
            None => f.write_str("0"),
            Some((top, rest)) => {
                write!(f, "{top:x}")?;
                for w in rest.iter().rev() {
                    write!(f, "{w:016x}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for BitPoly {
    type Err = Error;

    /// Accepts the canonical monomial form (`1+D^2+D^5`) or a hex integer
    /// whose bit `k` is the `D^k` coefficient (`0x25`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            return parse_hex(hex).ok_or_else(|| Error::Parse(format!("bad hex polynomial `{s}`")));
        }
        if s == "0" {
            return Ok(BitPoly::zero());
        }
        let mut p = BitPoly::zero();
        for term in s.split('+') {
            let term = term.trim();
            let k = parse_monomial(term)
                .ok_or_else(|| Error::Parse(format!("bad monomial `{term}` in `{s}`")))?;
            p.flip(k);
        }
        Ok(p)
    }
}

fn parse_monomial(term: &str) -> Option<usize> {
    match term {
        "1" => Some(0),
        "D" => Some(1),
        _ => term.strip_prefix("D^")?.parse().ok(),
    }
}

fn parse_hex(hex: &str) -> Option<BitPoly> {
    let hex = hex.trim_start_matches('0');
    if hex.is_empty() {
        return Some(BitPoly::zero());
    }
    let mut words = Vec::new();
    let digits = hex.as_bytes();
    for chunk in digits.rchunks(16) {
        let chunk = std::str::from_utf8(chunk).ok()?;
        words.push(u64::from_str_radix(chunk, 16).ok()?);
    }
    Some(BitPoly::from_words(words))
}

impl Serialize for BitPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BitPoly {
        s.parse().unwrap()
    }

    #[test]
    fn text_and_hex_forms_agree() {
        assert_eq!(p("1+D^2+D^5"), p("0x25"));
        assert_eq!(format!("{:#x}", p("1+D^2+D^5")), "0x25");
        assert_eq!(p("1+D^2+D^5").to_string(), "1+D^2+D^5");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("D^70+1"), BitPoly::from_exponents(&[0, 70]));
        assert_eq!(p(&format!("{:#x}", p("D^70+D^3"))), p("D^70+D^3"));
    }

    #[test]
    fn rejects_malformed_terms() {
        assert!("1+X".parse::<BitPoly>().is_err());
        assert!("D^".parse::<BitPoly>().is_err());
        assert!("0xzz".parse::<BitPoly>().is_err());
        assert!("".parse::<BitPoly>().is_err());
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(BitPoly::zero().degree(), None);
        assert_eq!(BitPoly::one().degree(), Some(0));
        assert_eq!(BitPoly::monomial(128).degree(), Some(128));
        let mut q = BitPoly::monomial(100);
        q.flip(100);
        assert!(q.is_zero());
        assert!(q.words().is_empty());
    }

    #[test]
    fn squaring_in_characteristic_two() {
        let m = p("D^3");
        assert_eq!(poly_mul_mod(&p("D+1"), &p("D+1"), &m).unwrap(), p("1+D^2"));
        let a = p("1+D+D^40+D^63+D^64+D^99");
        assert_eq!(a.square(), a.mul(&a));
    }

    #[test]
    fn identity_and_zero_modulus() {
        let m = p("1+D+D^3");
        let a = p("D^4+D");
        assert_eq!(poly_mul_mod(&a, &BitPoly::one(), &m).unwrap(), a.rem(&m).unwrap());
        assert!(poly_mul_mod(&a, &a, &BitPoly::zero()).is_err());
        assert!(poly_pow_mod(&a, 3, &BitPoly::zero()).is_err());
        assert_eq!(poly_pow_mod(&a, 0, &m).unwrap(), BitPoly::one());
    }

    #[test]
    fn pow_mod_literal_quintic() {
        assert_eq!(
            poly_pow_mod(&BitPoly::x(), 7, &p("1+D+D^2+D^4+D^5")).unwrap(),
            p("1+D^2")
        );
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p("1+D^3+D^17+D^65+D^130");
        let b = p("1+D+D^9");
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.degree().unwrap_or(0) < 9);
        assert_eq!(&q.mul(&b) + &r, a);
    }

    #[test]
    fn reciprocal_reverses() {
        assert_eq!(p("1+D+D^3").reverse(), p("1+D^2+D^3"));
        assert_eq!(p("D+D^2").reciprocal(3), p("D+D^2"));
        assert_eq!(p("1+D^3+D^4").reverse(), p("1+D+D^4"));
    }

    #[test]
    fn serde_uses_canonical_text() {
        let json = serde_json::to_string(&p("1+D^2+D^5")).unwrap();
        assert_eq!(json, "\"1+D^2+D^5\"");
        let back: BitPoly = serde_json::from_str("\"0x25\"").unwrap();
        assert_eq!(back, p("1+D^2+D^5"));
    }
}
