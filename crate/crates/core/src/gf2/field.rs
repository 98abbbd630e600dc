use super::factors::mersenne_prime_factors;
use super::poly::BitPoly;
use crate::error::{invalid, Error, Result};

/// Largest field degree supported by [`FieldContext`].
pub const MAX_FIELD_DEGREE: usize = 64;

/// Rabin's irreducibility test: `p` of degree `m` is irreducible iff
/// `D^(2^m) = D (mod p)` and `gcd(D^(2^(m/q)) - D, p) = 1` for every prime `q | m`.
pub fn is_irreducible(p: &BitPoly) -> Result<bool> {
    let m = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return invalid("irreducibility is only defined for degree >= 1"),
    };
    let x = BitPoly::x().rem(p)?;
    let divisors: Vec<usize> = small_prime_factors(m).into_iter().map(|q| m / q).collect();
    let mut frob = x.clone();
    for k in 1..=m {
        frob = frob.square().rem(p)?;
        if divisors.contains(&k) {
            let g = (&frob + &x).gcd(p);
            if !g.is_one() {
                return Ok(false);
            }
        }
    }
    Ok(frob == x)
}

/// `p` is primitive iff it is irreducible and `D` has multiplicative order
/// exactly `2^m - 1` modulo `p`.
pub fn is_primitive(p: &BitPoly) -> Result<bool> {
    let m = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return invalid("primitivity is only defined for degree >= 1"),
    };
    let primes = mersenne_prime_factors(m).ok_or_else(|| {
        Error::Unsupported(format!("primitivity test limited to degree <= {MAX_FIELD_DEGREE}"))
    })?;
    if !is_irreducible(p)? {
        return Ok(false);
    }
    let order: u128 = (1u128 << m) - 1;
    let x = BitPoly::x();
    if !x.pow_mod(order, p)?.is_one() {
        return Ok(false);
    }
    for &q in primes {
        if x.pow_mod(order / q as u128, p)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn small_prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of GF(2^m), stored as the packed residue polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn residue(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn to_poly(self) -> BitPoly {
        BitPoly::from_u64(self.0)
    }
}

/// GF(2^m) realised as GF(2)[D] modulo a primitive polynomial, so that the
/// residue of `D` is a primitive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldContext {
    modulus: BitPoly,
    packed: u128,
    m: usize,
}

impl FieldContext {
    pub fn new(modulus: BitPoly) -> Result<Self> {
        let m = match modulus.degree() {
            Some(d) if d >= 1 => d,
            _ => return invalid("field modulus must have degree >= 1"),
        };
        if m > MAX_FIELD_DEGREE {
            return Err(Error::Unsupported(format!(
                "field degree {m} exceeds {MAX_FIELD_DEGREE}"
            )));
        }
        if !is_primitive(&modulus)? {
            return invalid(format!("field modulus {modulus} is not primitive"));
        }
        let packed = modulus.to_u128().expect("degree <= 64 fits in u128");
        Ok(FieldContext { modulus, packed, m })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &BitPoly {
        &self.modulus
    }

    /// Multiplicative group order `2^m - 1`.
    pub fn group_order(&self) -> u128 {
        (1u128 << self.m) - 1
    }

    pub fn element(&self, poly: &BitPoly) -> Result<FieldElement> {
        let r = poly.rem(&self.modulus)?;
        Ok(FieldElement(r.to_u64().expect("residue below degree 64")))
    }

    /// The primitive root: the residue of `D`.
    pub fn alpha(&self) -> FieldElement {
        FieldElement(self.reduce(2))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let mut prod = 0u128;
        let mut x = a.0;
        while x != 0 {
            let i = x.trailing_zeros();
            x &= x - 1;
            prod ^= (b.0 as u128) << i;
        }
        FieldElement(self.reduce(prod))
    }

    pub fn pow(&self, a: FieldElement, e: u128) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn alpha_pow(&self, e: u128) -> FieldElement {
        self.pow(self.alpha(), e % self.group_order())
    }

    fn reduce(&self, mut v: u128) -> u64 {
        for bit in (self.m..128).rev() {
            if (v >> bit) & 1 == 1 {
                v ^= self.packed << (bit - self.m);
            }
        }
        v as u64
    }
}

/// Cyclotomic coset of `e` modulo `2^m - 1`: the orbit `e, 2e, 4e, ...`.
pub fn cyclotomic_coset(e: u128, m: usize) -> Vec<u128> {
    assert!((1..=MAX_FIELD_DEGREE).contains(&m));
    let order = (1u128 << m) - 1;
    let start = e % order;
    let mut out = vec![start];
    let mut c = start;
    loop {
        // Doubling modulo 2^m - 1 is an m-bit rotation.
        c = ((c << 1) | (c >> (m - 1))) & order;
        if c == start {
            return out;
        }
        out.push(c);
    }
}

/// Minimal polynomial of `alpha^e`: the product of `(D + alpha^c)` over the
/// cyclotomic coset of `e`. The field coefficients of the product must all
/// collapse to 0 or 1; anything else is reported as an internal error.
pub fn minimal_polynomial_of_power(ctx: &FieldContext, e: u128) -> Result<BitPoly> {
    if e == 0 || (ctx.m < 128 && e >> ctx.m != 0) {
        return invalid(format!("exponent {e} outside 1..2^{}", ctx.m));
    }
    let mut coeffs: Vec<FieldElement> = vec![FieldElement::ONE];
    for c in cyclotomic_coset(e, ctx.m) {
        let root = ctx.alpha_pow(c);
        let mut next = vec![FieldElement::ZERO; coeffs.len() + 1];
        for (k, &a) in coeffs.iter().enumerate() {
            next[k + 1] = ctx.add(next[k + 1], a);
            next[k] = ctx.add(next[k], ctx.mul(root, a));
        }
        coeffs = next;
    }
    let mut out = BitPoly::zero();
    for (k, a) in coeffs.iter().enumerate() {
        match a.residue() {
            0 => {}
            1 => out.flip(k),
            other => {
                return Err(Error::Internal(format!(
                    "coset product coefficient of D^{k} is {other:#x}, not in GF(2)"
                )))
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BitPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_cases() {
        assert!(is_primitive(&p("1+D+D^3")).unwrap());
        assert!(!is_irreducible(&p("D^2")).unwrap());
        assert!(is_irreducible(&p("1+D+D^2+D^3+D^4")).unwrap());
        assert!(!is_primitive(&p("1+D+D^2+D^3+D^4")).unwrap());
        assert!(is_primitive(&p("1+D")).unwrap());
        assert!(is_irreducible(&p("D")).unwrap());
        assert!(!is_primitive(&p("D")).unwrap());
        assert!(is_irreducible(&BitPoly::one()).is_err());
        assert!(is_primitive(&BitPoly::zero()).is_err());
    }

    #[test]
    fn degree_64_primitive() {
        // D^64 + D^4 + D^3 + D + 1 is a standard primitive pentanomial.
        let q = p("1+D+D^3+D^4+D^64");
        assert!(is_primitive(&q).unwrap());
        let ctx = FieldContext::new(q.clone()).unwrap();
        assert_eq!(minimal_polynomial_of_power(&ctx, 1).unwrap(), q);
        assert_eq!(ctx.pow(ctx.alpha(), ctx.group_order()), FieldElement::ONE);
    }

    #[test]
    fn example_coset_polynomial() {
        let ctx = FieldContext::new(p("1+D+D^3+D^4+D^5")).unwrap();
        assert_eq!(minimal_polynomial_of_power(&ctx, 3).unwrap(), p("1+D^2+D^5"));
        assert_eq!(minimal_polynomial_of_power(&ctx, 1).unwrap(), p("1+D+D^3+D^4+D^5"));
        assert!(minimal_polynomial_of_power(&ctx, 0).is_err());
        assert!(minimal_polynomial_of_power(&ctx, 32).is_err());
    }

    #[test]
    fn coset_of_unity_and_rotation() {
        assert_eq!(cyclotomic_coset(3, 4), vec![3, 6, 12, 9]);
        assert_eq!(cyclotomic_coset(5, 4), vec![5, 10]);
        assert_eq!(cyclotomic_coset(15, 4), vec![0]);
    }

    #[test]
    fn rejects_non_primitive_modulus() {
        assert!(FieldContext::new(p("1+D+D^2+D^3+D^4")).is_err());
        assert!(FieldContext::new(BitPoly::monomial(65)).is_err());
    }
}
