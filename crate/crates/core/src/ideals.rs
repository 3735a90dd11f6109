//! Ideals of the ring of Fermat reals.
//!
//! Every proper ideal lies in the maximal ideal `D_∞` of infinitesimals. An
//! ideal is determined by the orders of its elements: if the supremum `a` of
//! those orders is attained, the ideal is `I_a = {x ∈ D_∞ : ω(x) <= a}`;
//! otherwise it is `D_{a−1}`. Finitely many generators always attain their
//! supremum, so generated ideals are `I_a`, `{0}` or the whole ring.

use std::fmt;

use num_traits::One;

use crate::error::{FermatError, Result};
use crate::real::FermatReal;
use crate::scalar::{format_rational, Rational, Scalar};

/// Index of `D_a`: a non-negative rational or `∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Bound {
    Finite(Rational),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IdealKind {
    /// `{x : °x = 0, ω(x) < a + 1}`.
    Da(Bound),
    /// `{x : °x = 0, ω(x) <= a}`.
    Ia(Rational),
    /// All infinitesimals.
    Dinf,
    /// The whole ring.
    Unit,
    Zero,
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealKind::Da(Bound::Finite(a)) => write!(f, "D_{}", format_rational(a)),
            IdealKind::Da(Bound::Infinite) | IdealKind::Dinf => write!(f, "D_inf"),
            IdealKind::Ia(a) => write!(f, "I_{}", format_rational(a)),
            IdealKind::Unit => write!(f, "ER"),
            IdealKind::Zero => write!(f, "{{0}}"),
        }
    }
}

pub fn in_da(x: &FermatReal, a: &Bound) -> bool {
    x.is_infinitesimal()
        && match a {
            Bound::Infinite => true,
            Bound::Finite(a) => x.order() < a + Rational::one(),
        }
}

pub fn in_ia(x: &FermatReal, a: &Rational) -> bool {
    x.is_infinitesimal() && x.order() <= *a
}

/// The ideal generated by `gens`.
pub fn classify_generated(gens: &[FermatReal]) -> Result<IdealKind> {
    if gens.is_empty() {
        return Err(FermatError::PreconditionViolated("at least one generator is needed".into()));
    }
    if gens.iter().any(FermatReal::is_invertible) {
        return Ok(IdealKind::Unit);
    }
    if gens.iter().all(FermatReal::is_zero) {
        return Ok(IdealKind::Zero);
    }
    let sup = gens.iter().map(FermatReal::order).max().expect("nonempty");
    Ok(IdealKind::Ia(sup))
}

pub fn ideal_member(x: &FermatReal, kind: &IdealKind) -> bool {
    match kind {
        IdealKind::Da(a) => in_da(x, a),
        IdealKind::Ia(a) => in_ia(x, a),
        IdealKind::Dinf => x.is_infinitesimal(),
        IdealKind::Unit => true,
        IdealKind::Zero => x.is_zero(),
    }
}

/// The quotient map onto `ER/D_∞ ≅ R`.
pub fn std_morphism(x: &FermatReal) -> Scalar {
    x.std_part().clone()
}

/// Coefficients `u_i` with `x = Σ u_i·g_i`, proving `x` lies in the ideal
/// generated by `gens`. All weight is put on one generator of largest order
/// (or on an invertible one); the rest get 0.
pub fn membership_certificate(x: &FermatReal, gens: &[FermatReal]) -> Result<Vec<FermatReal>> {
    let kind = classify_generated(gens)?;
    if !ideal_member(x, &kind) {
        return Err(FermatError::PreconditionViolated(format!("x is not in {kind}")));
    }
    let mut coeffs = vec![FermatReal::zero(); gens.len()];
    if x.is_zero() {
        return Ok(coeffs);
    }
    let pivot = match kind {
        IdealKind::Unit => gens.iter().position(FermatReal::is_invertible),
        _ => {
            let sup = x.order().max(gens.iter().map(FermatReal::order).max().expect("nonempty"));
            gens.iter().position(|g| g.order() == sup)
        }
    }
    .expect("the pivot generator exists");
    coeffs[pivot] = x.divide(&gens[pivot])?;
    Ok(coeffs)
}
