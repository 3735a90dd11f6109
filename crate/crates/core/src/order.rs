//! Harmonic arithmetic on orders of infinitesimals.
//!
//! Products of canonical infinitesimals add the reciprocals of their orders,
//! so orders live naturally in `Q_{>0} ∪ {∞}` with
//! `a ⊕ b = (1/a + 1/b)^-1` and `a ⊖ b = (1/a - 1/b)^-1`, where `1/0 = ∞`
//! and `1/∞ = 0`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{FermatError, Result};
use crate::scalar::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedOrder {
    Finite(Rational),
    Infinite,
}

impl ExtendedOrder {
    /// Panics if `value <= 0`.
    pub fn finite(value: Rational) -> Self {
        assert!(value.is_positive(), "orders are strictly positive");
        ExtendedOrder::Finite(value)
    }

    /// `1/self`, with `1/∞ = 0`.
    pub fn reciprocal(&self) -> Rational {
        match self {
            ExtendedOrder::Finite(v) => v.recip(),
            ExtendedOrder::Infinite => Rational::zero(),
        }
    }

    /// Inverse of [`reciprocal`](Self::reciprocal): `0 ↦ ∞`.
    /// Negative reciprocals have no order and are rejected.
    pub fn from_reciprocal(r: Rational) -> Result<Self> {
        if r.is_zero() {
            Ok(ExtendedOrder::Infinite)
        } else if r.is_positive() {
            Ok(ExtendedOrder::Finite(r.recip()))
        } else {
            Err(FermatError::Domain(format!(
                "harmonic difference is negative (reciprocal {})",
                format_rational(&r)
            )))
        }
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtendedOrder::Finite(v) => Some(v),
            ExtendedOrder::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedOrder::Infinite)
    }

    pub fn oplus(&self, other: &ExtendedOrder) -> ExtendedOrder {
        oplus(self, other)
    }
}

impl PartialOrd for ExtendedOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedOrder::Infinite, ExtendedOrder::Infinite) => Ordering::Equal,
            (ExtendedOrder::Infinite, _) => Ordering::Greater,
            (_, ExtendedOrder::Infinite) => Ordering::Less,
            (ExtendedOrder::Finite(a), ExtendedOrder::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtendedOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedOrder::Finite(v) => write!(f, "{}", format_rational(v)),
            ExtendedOrder::Infinite => write!(f, "inf"),
        }
    }
}

impl From<Rational> for ExtendedOrder {
    fn from(v: Rational) -> Self {
        ExtendedOrder::finite(v)
    }
}

/// `a ⊕ b = (1/a + 1/b)^-1`; `a ⊕ ∞ = a`.
pub fn oplus(a: &ExtendedOrder, b: &ExtendedOrder) -> ExtendedOrder {
    let r = a.reciprocal() + b.reciprocal();
    if r.is_zero() {
        ExtendedOrder::Infinite
    } else {
        ExtendedOrder::Finite(r.recip())
    }
}

/// `a ⊖ b = (1/a - 1/b)^-1`; requires `a <= b`, and `a ⊖ a = ∞`.
pub fn ominus(a: &ExtendedOrder, b: &ExtendedOrder) -> Result<ExtendedOrder> {
    ExtendedOrder::from_reciprocal(a.reciprocal() - b.reciprocal())
}

/// `a ⊕ b` on finite positive rationals.
pub fn oplus_rat(a: &Rational, b: &Rational) -> Rational {
    (a * b) / (a + b)
}

/// `a ⊖ b` on finite rationals with `a < b`.
pub fn ominus_rat(a: &Rational, b: &Rational) -> Result<Rational> {
    match ominus(&ExtendedOrder::finite(a.clone()), &ExtendedOrder::finite(b.clone()))? {
        ExtendedOrder::Finite(v) => Ok(v),
        ExtendedOrder::Infinite => Err(FermatError::Domain(format!(
            "{} ⊖ {} is infinite",
            format_rational(a),
            format_rational(b)
        ))),
    }
}
