//! Rational exponents of the value group `Q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::Error;

/// An arbitrary-precision rational, always in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponent(BigRational);

impl Exponent {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Exponent(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_ratio(r: BigRational) -> Self {
        Exponent(r)
    }

    pub fn int(n: i64) -> Self {
        Exponent(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Exponent(BigRational::zero())
    }

    pub fn one() -> Self {
        Exponent(BigRational::one())
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Exponent(&self.0 * BigRational::from_integer(k.into()))
    }

    pub fn div_int(&self, k: i64) -> Self {
        Exponent(&self.0 / BigRational::from_integer(k.into()))
    }

    pub fn min<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Numerator over the given common denominator, if it fits in `i64`.
    pub(crate) fn scaled(&self, den: i64) -> Option<i64> {
        let d = self.0.denom().to_i64()?;
        if den % d != 0 {
            return None;
        }
        let n = self.0.numer().to_i64()?;
        n.checked_mul(den / d)
    }

    /// Denominator as `i64`, if it fits.
    pub(crate) fn denom_i64(&self) -> Option<i64> {
        self.0.denom().to_i64()
    }
}

/// Least common multiple of the denominators, if it fits in `i64`.
pub(crate) fn common_denominator<'a>(es: impl IntoIterator<Item = &'a Exponent>) -> Option<i64> {
    let mut den = 1i64;
    for e in es {
        let d = e.denom_i64()?;
        let g = den.gcd(&d);
        den = den.checked_mul(d / g)?;
    }
    Some(den)
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::syntax(0, format!("bad rational `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Exponent(BigRational::new(n, d)))
    }
}

macro_rules! exp_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Exponent> for &Exponent {
            type Output = Exponent;
            fn $method(self, rhs: &Exponent) -> Exponent {
                Exponent((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Exponent {
            type Output = Exponent;
            fn $method(self, rhs: Exponent) -> Exponent {
                Exponent(self.0.$method(rhs.0))
            }
        }
    };
}

exp_binop!(Add, add);
exp_binop!(Sub, sub);
exp_binop!(Mul, mul);

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-&self.0)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

/// `a + b` where `None` stands for `+∞`.
pub(crate) fn add_inf(a: Option<&Exponent>, b: Option<&Exponent>) -> Option<Exponent> {
    Some(a? + b?)
}

/// `min(a, b)` where `None` stands for `+∞`.
pub(crate) fn min_inf(a: Option<&Exponent>, b: Option<&Exponent>) -> Option<Exponent> {
    match (a, b) {
        (None, None) => None,
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (Some(x), Some(y)) => Some(x.min(y).clone()),
    }
}
