//! Conversion of a shrinking generator into an equivalent hybrid 90/150
//! cellular automaton.
//!
//! The pipeline has three stages:
//!
//! 1. [`coset_polynomial`]: the primitive polynomial `P(D)` whose power
//!    `P(D)^N` is the characteristic polynomial of the shrunken sequence. It
//!    is the minimal polynomial of `alpha^E`, `E = 2^L1 - 1`, in the field
//!    defined by the characteristic polynomial of the data register.
//! 2. [`synthesize_ca`]: the two (mirror-image) 90/150 automata whose
//!    transition matrix has characteristic polynomial `P(D)`.
//! 3. [`expand_once`], applied `L1 - 1` times: each round squares the
//!    characteristic polynomial while doubling the automaton length.
//!
//! Work in step 3 is linear in `L1` rounds; nothing enumerates `2^L1` objects.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::gf2::{cyclotomic_coset, is_irreducible, minimal_polynomial_of_power, BitPoly, FieldContext};

/// Longest automaton [`model_sg`] will materialise.
pub const MAX_MODEL_CELLS: usize = 1 << 24;

/// Exhaustive synthesis is only attempted up to this many cells.
pub const MAX_EXHAUSTIVE_CELLS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `x_i' = x_(i-1) + x_(i+1)`
    R90,
    /// `x_i' = x_(i-1) + x_i + x_(i+1)`
    R150,
}

impl Rule {
    pub fn number(self) -> u32 {
        match self {
            Rule::R90 => 90,
            Rule::R150 => 150,
        }
    }

    /// Next-state lookup for the neighbourhood `(left, self, right)`.
    pub fn apply(self, left: bool, center: bool, right: bool) -> bool {
        let idx = (left as u32) << 2 | (center as u32) << 1 | right as u32;
        (self.number() >> idx) & 1 == 1
    }
}

/// Rule assignment of a null-boundary hybrid 90/150 automaton.
///
/// Text form: `0` for rule 90, `1` for rule 150, leftmost character is cell 1.
/// Internally packed so that bit `i` is set when cell `i + 1` uses rule 150.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RuleVector {
    words: Vec<u64>,
    len: usize,
}

impl RuleVector {
    pub fn from_rules(rules: &[Rule]) -> Result<Self> {
        Self::from_flags(rules.iter().map(|&r| r == Rule::R150))
    }

    /// `true` marks a rule-150 cell.
    pub fn from_flags<I: IntoIterator<Item = bool>>(flags: I) -> Result<Self> {
        let mut words = Vec::new();
        let mut len = 0;
        for f in flags {
            if len % 64 == 0 {
                words.push(0);
            }
            if f {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        if len == 0 {
            return invalid("a rule vector needs at least one cell");
        }
        Ok(RuleVector { words, len })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Rule of the cell at 0-based index `i`.
    pub fn rule(&self, i: usize) -> Rule {
        if self.is_150(i) {
            Rule::R150
        } else {
            Rule::R90
        }
    }

    pub fn is_150(&self, i: usize) -> bool {
        assert!(i < self.len, "cell index {i} out of range");
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn flags(&self) -> impl DoubleEndedIterator<Item = bool> + ExactSizeIterator + '_ {
        (0..self.len).map(|i| self.is_150(i))
    }

    pub fn rules(&self) -> impl Iterator<Item = Rule> + '_ {
        (0..self.len).map(|i| self.rule(i))
    }

    /// Packed rule-150 mask, one bit per cell.
    pub(crate) fn mask(&self) -> &[u64] {
        &self.words
    }

    pub fn reversed(&self) -> RuleVector {
        Self::from_flags(self.flags().rev()).expect("nonempty")
    }
}

impl fmt::Display for RuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.flags().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for RuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RuleVector({self})")
    }
}

impl FromStr for RuleVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let flags = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("bad rule code `{other}` in `{s}`"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        RuleVector::from_flags(flags)
    }
}

impl Serialize for RuleVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RuleVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Characteristic polynomial of the tridiagonal transition matrix, by the
/// continuant recurrence `Δ_k = (D + d_k) Δ_(k-1) + Δ_(k-2)`.
pub fn ca_charpoly(rv: &RuleVector) -> BitPoly {
    let mut prev = BitPoly::zero();
    let mut cur = BitPoly::one();
    for d in rv.flags() {
        let mut next = cur.shl(1);
        if d {
            next += &cur;
        }
        next += &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Complement the last rule, then append the mirror image. The result has
/// twice the length and the squared characteristic polynomial.
pub fn expand_once(rv: &RuleVector) -> RuleVector {
    let n = rv.len();
    let half: Vec<bool> = rv.flags().enumerate().map(|(i, d)| d ^ (i == n - 1)).collect();
    let full = half.iter().chain(half.iter().rev()).copied();
    RuleVector::from_flags(full).expect("nonempty")
}

/// The polynomial `P(D)` of the shrunken sequence: the minimal polynomial of
/// `alpha^(2^L1 - 1)` where `alpha` is a root of `p2`.
pub fn coset_polynomial(p2: &BitPoly, l1: usize) -> Result<BitPoly> {
    if l1 == 0 {
        return invalid("L1 >= 1 required");
    }
    let ctx = FieldContext::new(p2.clone())?;
    let m = ctx.degree();
    let order = ctx.group_order();
    // 2^L1 = 2^(L1 mod m) modulo 2^m - 1.
    let e = ((1u128 << (l1 % m)) - 1) % order;
    let size = if e == 0 { 1 } else { cyclotomic_coset(e, m).len() };
    if size < m {
        return Err(Error::DegenerateCoset {
            exponent: e as u64,
            size,
            degree: m,
        });
    }
    if e == 0 {
        // Only reachable for m = 1, where GF(2) has alpha = 1.
        return Ok(p2.clone());
    }
    minimal_polynomial_of_power(&ctx, e)
}

/// The two 90/150 automata with characteristic polynomial `p`, lexicographically
/// smaller rule string first. The second is the mirror image of the first.
pub fn synthesize_ca(p: &BitPoly) -> Result<(RuleVector, RuleVector)> {
    let n = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return invalid("synthesis needs a polynomial of degree >= 1"),
    };
    if !is_irreducible(p)? {
        return invalid(format!("{p} is reducible"));
    }
    let found = if n == 1 {
        euclid_rules(p, &BitPoly::one())
    } else {
        synthesize_linear(p, n)
    };
    let rv = match found {
        Some(rv) => rv,
        None if n <= MAX_EXHAUSTIVE_CELLS => synthesize_exhaustive(p).ok_or_else(|| {
            Error::Internal(format!("no 90/150 automaton found for irreducible {p}"))
        })?,
        None => {
            return Err(Error::Internal(format!(
                "linear synthesis failed for irreducible {p}"
            )))
        }
    };
    let mirror = rv.reversed();
    let (first, second) = if mirror.to_string() < rv.to_string() {
        (mirror, rv)
    } else {
        (rv, mirror)
    };
    for v in [&first, &second] {
        if ca_charpoly(v) != *p {
            return Err(Error::Internal(format!(
                "synthesized {v} has characteristic polynomial {} instead of {p}",
                ca_charpoly(v)
            )));
        }
    }
    Ok((first, second))
}

/// Brute-force search over all `2^n` rule vectors, in lexicographic order of
/// their text form. Returns the first whose characteristic polynomial is `p`.
pub fn synthesize_exhaustive(p: &BitPoly) -> Option<RuleVector> {
    let n = p.degree()?;
    if n == 0 || n > MAX_EXHAUSTIVE_CELLS {
        return None;
    }
    (0u64..1 << n).find_map(|v| {
        let rv = RuleVector::from_flags((0..n).map(|i| (v >> (n - 1 - i)) & 1 == 1)).ok()?;
        (ca_charpoly(&rv) == *p).then_some(rv)
    })
}

/// Reads a rule vector off the continued fraction of `p / b`: every partial
/// quotient must be `D` or `D + 1`, and the final remainder chain must end in 1.
fn euclid_rules(p: &BitPoly, b: &BitPoly) -> Option<RuleVector> {
    let mut a = p.clone();
    let mut bb = b.clone();
    let mut rules = Vec::new();
    while !bb.is_zero() {
        let (q, r) = a.div_rem(&bb).ok()?;
        if q.degree() != Some(1) {
            return None;
        }
        rules.push(q.coeff(0));
        a = bb;
        bb = r;
    }
    if !a.is_one() {
        return None;
    }
    RuleVector::from_flags(rules.into_iter().rev()).ok()
}

/// Synthesis through the leading principal minor `B = Δ_(n-1)`.
///
/// Let `s_k` be the impulse response of `B / P` (the diagonal moments
/// `e_n^T A^k e_n`) and `u_k` that of `1 / P` (the corner moments
/// `e_1^T A^k e_n`). For a symmetric tridiagonal `A` over GF(2),
/// `1^T A = d + e_1 + e_n` and `u^T u = 1^T u`, which gives the linear identity
/// `s_(2k+2) + s_(2k+1) = s_k + u_k`. Solving it for the coefficients of `B`
/// leaves a tiny affine space; each candidate is checked by Euclid.
fn synthesize_linear(p: &BitPoly, n: usize) -> Option<RuleVector> {
    let equations = 2 * n;
    let horizon = 2 * equations + n + 2;
    // h[t] = coefficient of D^(n-1) in D^t mod p; s_k(D^j) = h[j + k].
    let mut h = Vec::with_capacity(horizon);
    let mut r = BitPoly::one();
    for _ in 0..horizon {
        h.push(r.coeff(n - 1));
        r = r.shl(1);
        if r.coeff(n) {
            r += p;
        }
    }
    let unknowns = n - 1;
    let combo = |j: usize, k: usize| h[j + 2 * k + 2] ^ h[j + 2 * k + 1] ^ h[j + k];
    let rows = (0..equations).map(|k| {
        let mut row = BitPoly::zero();
        for j in 0..unknowns {
            if combo(j, k) {
                row.flip(j);
            }
        }
        // Known side: u_k plus the contribution of the monic D^(n-1) term.
        if h[k] ^ combo(n - 1, k) {
            row.flip(unknowns);
        }
        row
    });
    let (particular, kernel) = solve_affine(rows, unknowns)?;
    if kernel.len() > 16 {
        return None;
    }
    let mut best: Option<RuleVector> = None;
    for mask in 0u32..1 << kernel.len() {
        let mut x = particular.clone();
        for (i, v) in kernel.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                x += v;
            }
        }
        x.flip(n - 1);
        if let Some(rv) = euclid_rules(p, &x) {
            if best.as_ref().is_none_or(|b| rv.to_string() < b.to_string()) {
                best = Some(rv);
            }
        }
    }
    best
}

/// Solves a GF(2) system given as rows with variable bits `0..nvars` and the
/// right-hand side at bit `nvars`. Returns a particular solution and a kernel
/// basis, or `None` when inconsistent.
fn solve_affine<I: IntoIterator<Item = BitPoly>>(
    rows: I,
    nvars: usize,
) -> Option<(BitPoly, Vec<BitPoly>)> {
    let mut pivots: Vec<(usize, BitPoly)> = Vec::new();
    for mut row in rows {
        for (col, prow) in &pivots {
            if row.coeff(*col) {
                row += prow;
            }
        }
        let Some(col) = row.exponents().find(|&c| c < nvars) else {
            if row.coeff(nvars) {
                return None;
            }
            continue;
        };
        for (_, prow) in pivots.iter_mut() {
            if prow.coeff(col) {
                *prow += &row;
            }
        }
        pivots.push((col, row));
    }
    let mut particular = BitPoly::zero();
    for (col, row) in &pivots {
        if row.coeff(nvars) {
            particular.flip(*col);
        }
    }
    let kernel = (0..nvars)
        .filter(|f| pivots.iter().all(|(c, _)| c != f))
        .map(|f| {
            let mut v = BitPoly::monomial(f);
            for (col, row) in &pivots {
                if row.coeff(f) {
                    v.flip(*col);
                }
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

/// Output of [`model_sg`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SgModel {
    #[serde(rename = "P")]
    pub p: BitPoly,
    pub rules_a: RuleVector,
    pub rules_b: RuleVector,
    pub length: usize,
    pub charpoly_check: bool,
}

/// The two automata modelling a shrinking generator with control length `l1`
/// and data-register characteristic polynomial `p2`.
pub fn model_sg(l1: usize, p2: &BitPoly) -> Result<SgModel> {
    let p = coset_polynomial(p2, l1)?;
    let base = p.degree().expect("coset polynomial is nonzero");
    let length = (l1 - 1 < 64)
        .then(|| base.checked_mul(1usize << (l1 - 1)))
        .flatten()
        .filter(|&n| n <= MAX_MODEL_CELLS)
        .ok_or_else(|| {
            Error::Unsupported(format!(
                "model length {base} * 2^{} exceeds {MAX_MODEL_CELLS} cells",
                l1 - 1
            ))
        })?;
    let (mut a, mut b) = synthesize_ca(&p)?;
    let mut expected = p.clone();
    for _ in 1..l1 {
        a = expand_once(&a);
        b = expand_once(&b);
        expected = expected.square();
    }
    let charpoly_check = ca_charpoly(&a) == expected && ca_charpoly(&b) == expected;
    Ok(SgModel {
        p,
        rules_a: a,
        rules_b: b,
        length,
        charpoly_check,
    })
}
