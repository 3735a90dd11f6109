//! Rational scalars with an exactness flag.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{FermatError, Result};

pub type Rational = BigRational;

/// Shorthand for `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q`. A zero denominator is rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Working binary precision for irrational intermediate values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Precision(pub u32);

impl Precision {
    pub const DEFAULT_BITS: u32 = 192;

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Two inexact values closer than `2^(8 - P)` cannot be ordered.
    pub fn tie_threshold(self) -> Rational {
        let exp = i64::from(self.0) - 8;
        if exp >= 0 {
            BigRational::new(BigInt::one(), BigInt::one() << exp as u64)
        } else {
            BigRational::from_integer(BigInt::one() << (-exp) as u64)
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(Self::DEFAULT_BITS)
    }
}

/// Rounds `v` to `bits` significant binary digits (round half up).
pub fn round_to_bits(v: &Rational, bits: u32) -> Rational {
    if v.is_zero() {
        return v.clone();
    }
    let magnitude = v.numer().bits() as i64 - v.denom().bits() as i64;
    let scale = i64::from(bits) - magnitude;
    let scaled = if scale >= 0 {
        v * BigRational::from_integer(BigInt::one() << scale as u64)
    } else {
        v / BigRational::from_integer(BigInt::one() << (-scale) as u64)
    };
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let m = (scaled + half).floor().to_integer();
    if scale >= 0 {
        BigRational::new(m, BigInt::one() << scale as u64)
    } else {
        BigRational::from_integer(m << (-scale) as u64)
    }
}

/// A rational coefficient that may stand in for an irrational value.
///
/// Arithmetic propagates `exact = exact_1 && exact_2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: Rational,
    exact: bool,
}

impl Scalar {
    pub fn exact(value: Rational) -> Self {
        Scalar { value, exact: true }
    }

    /// An inexact scalar, rounded to the working precision.
    pub fn approx(value: Rational, prec: Precision) -> Self {
        Scalar {
            value: round_to_bits(&value, prec.bits()),
            exact: false,
        }
    }

    /// Builds a scalar with an explicit flag and no rounding.
    pub fn with_flag(value: Rational, exact: bool) -> Self {
        Scalar { value, exact }
    }

    pub fn zero() -> Self {
        Scalar::exact(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::exact(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::exact(int(n))
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn into_value(self) -> Rational {
        self.value
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.value.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }

    pub fn abs(&self) -> Scalar {
        Scalar::with_flag(self.value.abs(), self.exact)
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(FermatError::DivisionByZero);
        }
        Ok(Scalar::with_flag(self.value.recip(), self.exact))
    }

    pub fn pow(&self, exp: i32) -> Scalar {
        Scalar::with_flag(num_traits::Pow::pow(&self.value, exp), self.exact)
    }

    /// Sign of the value, or `ApproximationTie` if it is an inexact value
    /// too close to zero to be trusted.
    pub fn decided_sign(&self, prec: Precision) -> Result<std::cmp::Ordering> {
        if !self.exact && !self.value.is_zero() && self.value.abs() < prec.tie_threshold() {
            return Err(FermatError::ApproximationTie);
        }
        Ok(self.value.cmp(&Rational::zero()))
    }
}

impl From<Rational> for Scalar {
    fn from(value: Rational) -> Self {
        Scalar::exact(value)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.exact {
            write!(f, "~")?;
        }
        write!(f, "{}", format_rational(&self.value))
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::with_flag(&self.value $op &rhs.value, self.exact && rhs.exact)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on a zero divisor; use [`Scalar::recip`] for a checked form.
    fn div(self, rhs: &Scalar) -> Scalar {
        Scalar::with_flag(&self.value / &rhs.value, self.exact && rhs.exact)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::with_flag(-&self.value, self.exact)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// `floor` and `ceil` of a rational as `i64`, saturating.
pub(crate) fn floor_i64(r: &Rational) -> i64 {
    let f = r.numer().div_floor(r.denom());
    i64::try_from(f).unwrap_or(if r.is_negative() { i64::MIN } else { i64::MAX })
}

pub(crate) fn ceil_i64(r: &Rational) -> i64 {
    let c = r.numer().div_ceil(r.denom());
    i64::try_from(c).unwrap_or(if r.is_negative() { i64::MIN } else { i64::MAX })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-4"), Some(int(-4)));
        assert_eq!(parse_rational("2/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn rounding_keeps_significant_bits() {
        let third = rat(1, 3);
        let r = round_to_bits(&third, 20);
        assert!((r.clone() - &third).abs() < rat(1, 1 << 20));
        assert!(r.denom().bits() <= 23);
        assert_eq!(round_to_bits(&int(5), 20), int(5));
    }

    #[test]
    fn exactness_propagates() {
        let a = Scalar::exact(rat(1, 2));
        let b = Scalar::approx(rat(1, 3), Precision::default());
        assert!((&a + &a).is_exact());
        assert!(!(&a * &b).is_exact());
        assert!(!(-&b).is_exact());
    }

    #[test]
    fn tie_detection() {
        let p = Precision(32);
        let tiny = Scalar::approx(rat(1, 1 << 30), p);
        assert_eq!(tiny.decided_sign(p), Err(FermatError::ApproximationTie));
        let tiny_exact = Scalar::exact(rat(1, 1 << 30));
        assert_eq!(tiny_exact.decided_sign(p), Ok(std::cmp::Ordering::Greater));
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(floor_i64(&rat(7, 2)), 3);
        assert_eq!(ceil_i64(&rat(7, 2)), 4);
        assert_eq!(floor_i64(&rat(-7, 2)), -4);
        assert_eq!(ceil_i64(&int(6)), 6);
    }
}
