//! Commutative rings with unity.
//!
//! Every transform in this crate is written against [`Ring`], so the same
//! construction runs over exact integers, over a prime field used for fast
//! cross-checks, and over weight-generating polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A commutative ring with unity. Elements are immutable values compared
/// structurally; the ring object itself carries any parameters (a modulus).
///
/// There is no division: none of the algorithms here needs it.
pub trait Ring {
    type Elem: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;

    /// The image of `z` under the canonical map `z -> z * 1`.
    fn from_integer(&self, z: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn equals(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, b);
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.equals(a, &self.zero())
    }
}

/// Arbitrary-precision integers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BigIntRing;

impl Ring for BigIntRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_integer(&self, z: i64) -> BigInt {
        BigInt::from(z)
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn add_assign(&self, acc: &mut BigInt, b: &BigInt) {
        *acc += b;
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

/// Residues modulo a machine-word prime, always reduced into `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModPrimeRing {
    p: u64,
}

impl ModPrimeRing {
    /// A large prime below 2^62, used as the default modulus.
    pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 63).contains(&p) {
            return Err(Error::arg(format!("modulus {p} out of range [2, 2^63)")));
        }
        if !is_prime(p) {
            return Err(Error::arg(format!("modulus {p} is not prime")));
        }
        Ok(ModPrimeRing { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary integer into the ring.
    pub fn reduce(&self, z: &BigInt) -> u64 {
        let r = z % BigInt::from(self.p);
        let r = if r.is_negative() { r + self.p } else { r };
        r.to_u64().expect("residue fits in u64")
    }
}

impl Default for ModPrimeRing {
    fn default() -> Self {
        ModPrimeRing {
            p: Self::DEFAULT_PRIME,
        }
    }
}

impl Ring for ModPrimeRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_integer(&self, z: i64) -> u64 {
        (z as i128).rem_euclid(self.p as i128) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
}

// Deterministic Miller-Rabin; these bases are exact for all 64-bit inputs.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A univariate polynomial in `z` with arbitrary-precision integer
/// coefficients, stored densely in ascending powers.
///
/// The highest stored coefficient is nonzero; the zero polynomial has no
/// coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeightPolynomial {
    coeffs: Vec<BigInt>,
}

impl WeightPolynomial {
    pub fn zero() -> Self {
        WeightPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `z^w`.
    pub fn monomial(w: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); w + 1];
        coeffs[w] = BigInt::one();
        WeightPolynomial { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        WeightPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `z^w`, zero beyond the degree.
    pub fn coeff(&self, w: usize) -> BigInt {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Sum of all coefficients, i.e. the value at `z = 1`.
    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, z: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * z + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        self.trim();
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < other.coeffs.len() {
            coeffs.resize(other.coeffs.len(), BigInt::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Self::from_coeffs(coeffs)
    }

    /// Exact convolution of coefficient vectors.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Multiplies every coefficient by an integer.
    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `d`, failing unless all divisions are exact.
    pub fn exact_div(&self, d: i64) -> Option<Self> {
        let d = BigInt::from(d);
        if d.is_zero() {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !(c % &d).is_zero() {
                return None;
            }
            coeffs.push(c / &d);
        }
        Some(Self::from_coeffs(coeffs))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

/// Text form: `w:c` pairs in ascending weight, zero terms omitted, and `0`
/// for the zero polynomial.
impl fmt::Display for WeightPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{w}:{c}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for WeightPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in s.split_whitespace() {
            let (w, c) = term
                .split_once(':')
                .ok_or_else(|| Error::arg(format!("malformed term `{term}`")))?;
            let w: usize = w
                .parse()
                .map_err(|_| Error::arg(format!("bad weight in `{term}`")))?;
            let c: BigInt = c
                .parse()
                .map_err(|_| Error::arg(format!("bad coefficient in `{term}`")))?;
            out.add_assign(&Self::monomial(w).scale(&c));
        }
        Ok(out)
    }
}

/// The ring `Z[z]` of weight polynomials.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PolyRing;

impl Ring for PolyRing {
    type Elem = WeightPolynomial;

    fn zero(&self) -> WeightPolynomial {
        WeightPolynomial::zero()
    }

    fn one(&self) -> WeightPolynomial {
        WeightPolynomial::constant(1)
    }

    fn from_integer(&self, z: i64) -> WeightPolynomial {
        WeightPolynomial::constant(z)
    }

    fn add(&self, a: &WeightPolynomial, b: &WeightPolynomial) -> WeightPolynomial {
        a.add(b)
    }

    fn sub(&self, a: &WeightPolynomial, b: &WeightPolynomial) -> WeightPolynomial {
        a.sub(b)
    }

    fn mul(&self, a: &WeightPolynomial, b: &WeightPolynomial) -> WeightPolynomial {
        // Constants show up constantly as circuit coefficients.
        match (a.coeffs.len(), b.coeffs.len()) {
            (1, _) => b.scale(&a.coeffs[0]),
            (_, 1) => a.scale(&b.coeffs[0]),
            _ => a.mul(b),
        }
    }

    fn add_assign(&self, acc: &mut WeightPolynomial, b: &WeightPolynomial) {
        acc.add_assign(b);
    }

    fn is_zero(&self, a: &WeightPolynomial) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> WeightPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn from_integer_embeds() {
        assert_eq!(BigIntRing.from_integer(0), BigInt::zero());
        assert_eq!(ModPrimeRing::new(7).unwrap().from_integer(-1), 6);
        assert_eq!(ModPrimeRing::new(7).unwrap().from_integer(-15), 6);
        assert_eq!(PolyRing.from_integer(3), WeightPolynomial::constant(3));
        assert_eq!(PolyRing.from_integer(0), WeightPolynomial::zero());
    }

    #[test]
    fn poly_mul_examples() {
        let z = WeightPolynomial::monomial(1);
        let z2 = WeightPolynomial::monomial(2);
        assert_eq!(z.mul(&z2), WeightPolynomial::monomial(3));
        assert_eq!(poly("0:1 1:1").mul(&poly("0:1 1:1")), poly("0:1 1:2 2:1"));
        assert!(WeightPolynomial::zero().mul(&poly("0:1 1:1")).is_zero());
    }

    #[test]
    fn text_form() {
        assert_eq!(WeightPolynomial::zero().to_string(), "0");
        assert_eq!(poly("3:2 0:1").to_string(), "0:1 3:2");
        assert_eq!(poly("1:-4").to_string(), "1:-4");
        assert_eq!(poly("1:1 1:-1").to_string(), "0");
        assert!("1-2".parse::<WeightPolynomial>().is_err());
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = poly("2:1").sub(&poly("2:1 0:5"));
        assert_eq!(p.degree(), Some(0));
        assert_eq!(p.coeff(0), BigInt::from(-5));
        assert_eq!(p.coeff(9), BigInt::zero());
    }

    #[test]
    fn modulus_validation() {
        assert!(ModPrimeRing::new(1).is_err());
        assert!(ModPrimeRing::new(15).is_err());
        assert!(ModPrimeRing::new(1_000_000_007).is_ok());
        assert!(is_prime(ModPrimeRing::DEFAULT_PRIME));
    }

    #[test]
    fn exact_division() {
        assert_eq!(poly("0:6 2:3").exact_div(3), Some(poly("0:2 2:1")));
        assert_eq!(poly("0:6 2:4").exact_div(3), None);
    }
}
