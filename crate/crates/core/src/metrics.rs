//! Distances on Fermat reals.
//!
//! `d_F` only sees standard parts, so each monad collapses to a point.
//! `d_ω` adds the order of the difference and separates all points; balls of
//! radius at most 1 contain only standard translates.

use num_traits::{Signed, Zero};

use crate::error::{FermatError, Result};
use crate::numeric;
use crate::real::FermatReal;
use crate::scalar::{Precision, Rational};

/// `|°x − °y|`.
pub fn d_f(x: &FermatReal, y: &FermatReal) -> Rational {
    (x.std_part().value() - y.std_part().value()).abs()
}

/// `|°x − °y| + ω(x − y)`.
pub fn d_omega(x: &FermatReal, y: &FermatReal) -> Rational {
    d_f(x, y) + (x - y).order()
}

/// `|°x − °y| + Σ_{j=1}^{i} ω_j(x − y)`.
pub fn d_i(x: &FermatReal, y: &FermatReal, i: usize) -> Rational {
    let diff = x - y;
    (1..=i).fold(d_f(x, y), |acc, j| acc + diff.order_i(j))
}

/// `°x = °y` and `ω(x − y) <= k`.
pub fn eq_up_to(k: &Rational, x: &FermatReal, y: &FermatReal) -> bool {
    same_monad(x, y) && (x - y).order() <= *k
}

/// `°x = °y`.
pub fn same_monad(x: &FermatReal, y: &FermatReal) -> bool {
    x.std_part().value() == y.std_part().value()
}

/// The pseudovaluation `v(h) = −log ω(h)`, stored through `ω(h)`.
///
/// The map `ω ↦ −log ω` reverses order, so `v(x) >= v(y)` iff
/// `ω(x) <= ω(y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OmegaValue {
    /// `v(0) = +∞`.
    Infinite,
    Finite(Rational),
}

impl OmegaValue {
    pub fn omega(&self) -> Option<&Rational> {
        match self {
            OmegaValue::Finite(w) => Some(w),
            OmegaValue::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, OmegaValue::Infinite)
    }

    /// `−ln ω`, rounded to `prec` bits; `None` for `+∞`.
    pub fn neg_log(&self, prec: Precision) -> Option<Rational> {
        self.omega().map(|w| -numeric::ln(w, prec.bits()))
    }
}

/// Defined on infinitesimals only; for `°h != 0` the axioms fail.
pub fn pseudovaluation(h: &FermatReal) -> Result<OmegaValue> {
    if !h.is_infinitesimal() {
        return Err(FermatError::NotInfinitesimal);
    }
    if h.is_zero() {
        return Ok(OmegaValue::Infinite);
    }
    let w = h.order();
    debug_assert!(!w.is_zero());
    Ok(OmegaValue::Finite(w))
}
