//! Exact scalars: arbitrary-precision rationals and residues modulo an odd prime.
//!
//! Every rank and membership question in this crate is decided over one of these
//! fields, so equality is always structural. Characteristic 2 is rejected when a
//! [`FieldDescriptor`] is built; nothing downstream has to re-check it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(FieldDescriptor, FieldDescriptor),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
}

/// Which field a scalar lives in. Only ℚ and GF(p) for odd primes p can be built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldDescriptor(FieldKind);

impl FieldDescriptor {
    pub const fn rationals() -> Self {
        FieldDescriptor(FieldKind::Rationals)
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldDescriptor(FieldKind::Prime(p)))
    }

    pub fn kind(&self) -> FieldKind {
        self.0
    }

    /// 0 for ℚ, otherwise p.
    pub fn characteristic(&self) -> u64 {
        match self.0 {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.0 {
            FieldKind::Rationals => Scalar::rational(BigRational::from_integer(BigInt::from(v))),
            FieldKind::Prime(p) => Scalar::residue(reduce_i128(v as i128, p), p),
        }
    }

    /// `num / den`, reduced into this field.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        self.from_rational(&q)
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, FieldError> {
        match self.0 {
            FieldKind::Rationals => Ok(Scalar::rational(q.clone())),
            FieldKind::Prime(p) => {
                let num = reduce_big(q.numer(), p);
                let den = reduce_big(q.denom(), p);
                if den == 0 {
                    return Err(FieldError::DivisionByZero);
                }
                let num = Scalar::residue(num, p);
                let den = Scalar::residue(den, p);
                Ok(num * den.inv()?)
            }
        }
    }

    /// Parses `"a"`, `"-a"` or `"a/b"`. Over GF(p) the value is reduced mod p.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, FieldError> {
        let t = text.trim();
        let bad = || FieldError::Parse(text.to_string());
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        self.from_rational(&BigRational::new(num, den))
    }

    /// Parses a field spec: `q` for ℚ or `gf:<p>` for the prime field.
    pub fn parse_spec(spec: &str) -> Result<Self, FieldError> {
        match spec.trim() {
            "q" | "Q" => Ok(Self::rationals()),
            other => {
                let p = other
                    .strip_prefix("gf:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| FieldError::Parse(spec.to_string()))?;
                Self::prime(p)
            }
        }
    }

    /// Inverse of [`parse_spec`](Self::parse_spec).
    pub fn spec(&self) -> String {
        match self.0 {
            FieldKind::Rationals => "q".to_string(),
            FieldKind::Prime(p) => format!("gf:{p}"),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// An exact field element. Representations are canonical: rationals in lowest
/// terms with positive denominator, residues in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    fn rational(q: BigRational) -> Self {
        // BigRational::new already reduces; from_integer is trivially reduced.
        Scalar(Repr::Rational(q))
    }

    fn residue(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        Scalar(Repr::Residue { value, modulus })
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match &self.0 {
            Repr::Rational(_) => FieldDescriptor::rationals(),
            Repr::Residue { modulus, .. } => FieldDescriptor(FieldKind::Prime(*modulus)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q),
            Repr::Residue { .. } => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Residue { value, .. } => Some(*value),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        let (a, b) = (self.descriptor(), other.descriptor());
        if a == b {
            Ok(())
        } else {
            Err(FieldError::Mismatch(a, b))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar::rational(a + b),
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, .. }) => {
                Scalar::residue(((*a as u128 + *b as u128) % *p as u128) as u64, *p)
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar::rational(a * b),
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, .. }) => {
                Scalar::residue(((*a as u128 * *b as u128) % *p as u128) as u64, *p)
            }
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rational(q) => Scalar::rational(q.recip()),
            Repr::Residue { value, modulus } => {
                let inv = mod_inverse(*value, *modulus).ok_or(FieldError::DivisionByZero)?;
                Scalar::residue(inv, *modulus)
            }
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_mul(&other.inv()?)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Repr::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rational(q) => Scalar::rational(-q),
            Repr::Residue { value, modulus } => {
                Scalar::residue(if *value == 0 { 0 } else { modulus - value }, *modulus)
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// Operator forms panic on a field mismatch; use the `checked_*` methods where the
// operands are not already known to share a field.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect("scalar field mismatch")
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$checked(rhs).expect("scalar field mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce_i128(v: i128, p: u64) -> u64 {
    v.rem_euclid(p as i128) as u64
}

fn reduce_big(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    v.mod_floor(&m).to_u64().expect("residue fits in u64")
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(p as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(reduce_i128(g.x, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn gf(p: u64) -> FieldDescriptor {
        FieldDescriptor::prime(p).unwrap()
    }

    #[test]
    fn rational_sum() {
        let a = q().from_ratio(1, 2).unwrap();
        let b = q().from_ratio(1, 3).unwrap();
        assert_eq!((a + b).to_string(), "5/6");
    }

    #[test]
    fn residue_product() {
        let f = gf(5);
        assert_eq!((f.from_i64(2) * f.from_i64(3)).to_string(), "1");
    }

    #[test]
    fn neg_zero_is_zero() {
        assert!((-q().zero()).is_zero());
        assert!((-gf(7).zero()).is_zero());
        assert_eq!(-gf(7).zero(), gf(7).zero());
    }

    #[test]
    fn inverses() {
        assert_eq!(q().from_i64(2).inv().unwrap().to_string(), "1/2");
        assert_eq!(gf(5).from_i64(2).inv().unwrap().to_string(), "3");
        assert_eq!(q().zero().inv(), Err(FieldError::DivisionByZero));
        assert_eq!(gf(3).zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn rejects_bad_characteristics() {
        assert_eq!(FieldDescriptor::prime(2), Err(FieldError::CharacteristicTwo));
        assert_eq!(FieldDescriptor::prime(9), Err(FieldError::NotPrime(9)));
        assert_eq!(FieldDescriptor::prime(1), Err(FieldError::NotPrime(1)));
        assert!(FieldDescriptor::prime(3).is_ok());
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = q().one();
        let b = gf(5).one();
        assert!(matches!(a.checked_add(&b), Err(FieldError::Mismatch(..))));
        assert!(matches!(a.checked_mul(&b), Err(FieldError::Mismatch(..))));
    }

    #[test]
    fn canonical_representation() {
        let a = q().from_ratio(2, -4).unwrap();
        let b = q().from_ratio(-1, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "-1/2");
        assert_eq!(gf(5).from_i64(-1).to_string(), "4");
        assert_eq!(gf(5).from_ratio(1, 2).unwrap().to_string(), "3");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-3", "7/4", "-12/5"] {
            assert_eq!(q().parse_scalar(s).unwrap().to_string(), s);
        }
        assert_eq!(gf(5).parse_scalar("-1").unwrap().to_string(), "4");
        assert_eq!(gf(5).parse_scalar("1/5"), Err(FieldError::DivisionByZero));
        assert!(matches!(q().parse_scalar("x"), Err(FieldError::Parse(_))));
    }
}
