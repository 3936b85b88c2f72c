//! Exact coefficient fields: a prime field GF(p) and the rationals.
//!
//! Every per-degree computation in this crate is a rank or kernel over one of
//! these fields. Nothing is ever computed in floating point.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Default modulus for the prime-field proxy of characteristic zero.
pub const DEFAULT_PRIME: u32 = 32003;

/// Integers drawn by [`Rationals::sample`] lie in `[-RATIONAL_SAMPLE_BOUND, RATIONAL_SAMPLE_BOUND]`.
pub const RATIONAL_SAMPLE_BOUND: i64 = 99;

fn default_prime() -> u32 {
    DEFAULT_PRIME
}

/// Which field an instance is computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Prime {
        #[serde(default = "default_prime")]
        p: u32,
    },
    #[serde(alias = "rational", alias = "Q", alias = "q")]
    Rationals,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime { p: DEFAULT_PRIME }
    }
}

impl FieldSpec {
    /// Parses the command-line form: a prime number, or `Q`.
    pub fn parse_cli(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("rationals") {
            return Ok(FieldSpec::Rationals);
        }
        let p: u32 = s
            .parse()
            .map_err(|_| Error::Parse(format!("field must be a prime or `Q`, got `{s}`")))?;
        let spec = FieldSpec::Prime { p };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), Error> {
        match *self {
            FieldSpec::Prime { p } => {
                if p <= 3 || p >= 1 << 31 || !is_prime(p) {
                    return Err(Error::Parse(format!(
                        "modulus {p} must be a prime with 3 < p < 2^31"
                    )));
                }
                Ok(())
            }
            FieldSpec::Rationals => Ok(()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "GF({p})"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic over an exact field.
///
/// Elements are plain values; the field object carries whatever context the
/// arithmetic needs (the modulus for GF(p)).
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// `num / den`; `None` when `den` vanishes in the field.
    fn from_ratio(&self, num: i64, den: i64) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn to_json(&self, a: &Self::Elem) -> serde_json::Value;

    /// `dst[i] -= c * src[i]`, the inner loop of elimination.
    fn sub_scaled(&self, dst: &mut [Self::Elem], c: &Self::Elem, src: &[Self::Elem]) {
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                *d = self.sub(d, &self.mul(c, s));
            }
        }
    }

    /// `v[i] *= c`.
    fn scale(&self, v: &mut [Self::Elem], c: &Self::Elem) {
        for x in v.iter_mut() {
            *x = self.mul(x, c);
        }
    }
}

/// GF(p) with `3 < p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, Error> {
        FieldSpec::Prime { p }.validate()?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn pow(&self, base: u32, mut exp: u32) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc as u32
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    fn from_ratio(&self, num: i64, den: i64) -> Option<u32> {
        let d = self.from_i64(den);
        if d == 0 {
            return None;
        }
        Some(self.mul(&self.from_i64(num), &self.inv(&d)))
    }

    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (*a as u64 * *b as u64 % self.p as u64) as u32
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }

    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in GF({})", self.p);
        self.pow(*a, self.p - 2)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }

    fn to_json(&self, a: &u32) -> serde_json::Value {
        serde_json::Value::from(*a)
    }

    fn sub_scaled(&self, dst: &mut [u32], c: &u32, src: &[u32]) {
        let p = self.p as u64;
        let nc = (p - *c as u64 % p) % p;
        if nc == 0 {
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = ((*d as u64 + nc * s as u64) % p) as u32;
            }
        }
    }
}

/// The rational numbers, used for audit runs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(&self, num: i64, den: i64) -> Option<BigRational> {
        if den == 0 {
            return None;
        }
        Some(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }

    fn to_json(&self, a: &BigRational) -> serde_json::Value {
        if a.is_integer() {
            if let Some(v) = a.numer().to_i64() {
                return serde_json::Value::from(v);
            }
        }
        let sign = if a.is_negative() { "-" } else { "" };
        serde_json::Value::from(format!("{sign}{}/{}", a.numer().abs(), a.denom()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_arithmetic() {
        let f = PrimeField::default();
        assert_eq!(f.from_i64(-1), 32002);
        assert_eq!(f.mul(&f.inv(&12345), &12345), 1);
        assert_eq!(f.sub(&3, &5), 32001);
        assert_eq!(f.from_ratio(1, 2).map(|h| f.mul(&h, &2)), Some(1));
        assert_eq!(f.from_ratio(1, 32003), None);
    }

    #[test]
    fn sub_scaled_matches_generic() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let src: Vec<u32> = (0..50).map(|_| f.sample(&mut rng)).collect();
        let mut a: Vec<u32> = (0..50).map(|_| f.sample(&mut rng)).collect();
        let mut b = a.clone();
        let c = f.sample(&mut rng);
        f.sub_scaled(&mut a, &c, &src);
        for (x, s) in b.iter_mut().zip(&src) {
            *x = f.sub(x, &f.mul(&c, s));
        }
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(3).is_err());
        assert!(PrimeField::new(32001).is_err());
        assert!(PrimeField::new(5).is_ok());
    }

    #[test]
    fn field_spec_json() {
        let spec: FieldSpec = serde_json::from_str(r#"{"kind":"prime"}"#).unwrap();
        assert_eq!(spec, FieldSpec::Prime { p: 32003 });
        let spec: FieldSpec = serde_json::from_str(r#"{"kind":"Q"}"#).unwrap();
        assert_eq!(spec, FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse_cli("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(
            FieldSpec::parse_cli("101").unwrap(),
            FieldSpec::Prime { p: 101 }
        );
    }

    #[test]
    fn rational_json() {
        let q = Rationals;
        assert_eq!(q.to_json(&q.from_i64(-4)), serde_json::json!(-4));
        assert_eq!(
            q.to_json(&q.from_ratio(-3, 6).unwrap()),
            serde_json::json!("-1/2")
        );
    }
}
