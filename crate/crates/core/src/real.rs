//! Fermat reals in normal form.
//!
//! Every number is stored as its decomposition
//! `°x + Σ α_i·dt_{a_i}` with `a_1 > a_2 > … > a_N >= 1` and `α_i != 0`.
//! The canonical infinitesimals multiply by `dt_a · dt_b = dt_{a ⊕ b}` and
//! `dt_a = 0` whenever `a < 1`, which makes every infinitesimal nilpotent.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{FermatError, Result};
use crate::order::{ominus_rat, oplus_rat};
use crate::scalar::{floor_i64, format_rational, Precision, Rational, Scalar};

/// One infinitesimal summand `coef · dt_order`.
#[derive(Debug, Clone)]
pub struct Term {
    coef: Scalar,
    order: Rational,
}

impl Term {
    /// Panics if `order < 1` or `coef == 0`; such terms never appear in a
    /// normal form.
    pub fn new(coef: Scalar, order: Rational) -> Self {
        assert!(order >= Rational::one(), "term orders are >= 1");
        assert!(!coef.is_zero(), "term coefficients are nonzero");
        Term { coef, order }
    }

    pub fn coef(&self) -> &Scalar {
        &self.coef
    }

    pub fn order(&self) -> &Rational {
        &self.order
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.coef.value() == other.coef.value()
    }
}

impl Eq for Term {}

/// A Fermat real: a standard part plus infinitesimal terms in strictly
/// decreasing order.
///
/// Equality compares values only; [`FermatReal::is_exact`] reports whether
/// any scalar is an approximation.
#[derive(Debug, Clone)]
pub struct FermatReal {
    std: Scalar,
    terms: Vec<Term>,
}

impl PartialEq for FermatReal {
    fn eq(&self, other: &Self) -> bool {
        self.std.value() == other.std.value() && self.terms == other.terms
    }
}

impl Eq for FermatReal {}

impl Hash for FermatReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.std.value().hash(state);
        for t in &self.terms {
            t.order.hash(state);
            t.coef.value().hash(state);
        }
    }
}

impl FermatReal {
    pub fn zero() -> Self {
        FermatReal {
            std: Scalar::zero(),
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        FermatReal::from_scalar(Scalar::one())
    }

    pub fn from_scalar(std: Scalar) -> Self {
        FermatReal {
            std,
            terms: Vec::new(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        FermatReal::from_scalar(Scalar::exact(r))
    }

    pub fn from_int(n: i64) -> Self {
        FermatReal::from_scalar(Scalar::from_int(n))
    }

    /// The canonical infinitesimal `dt_a`; zero when `a < 1`.
    pub fn dt(a: &Rational) -> Result<Self> {
        if a.is_negative() {
            return Err(FermatError::Domain(format!(
                "dt_a needs a >= 0, got {}",
                format_rational(a)
            )));
        }
        if *a < Rational::one() {
            return Ok(FermatReal::zero());
        }
        Ok(FermatReal {
            std: Scalar::zero(),
            terms: vec![Term::new(Scalar::one(), a.clone())],
        })
    }

    /// `coef · dt_order`, already reduced (zero if `order < 1`).
    pub fn monomial(coef: Scalar, order: Rational) -> Self {
        FermatReal::normalize(Scalar::zero(), [(coef, order)])
    }

    /// Builds the normal form from an arbitrary list of summands: equal
    /// orders are merged, zero coefficients and orders below 1 are dropped,
    /// and the rest is sorted by decreasing order.
    pub fn normalize<I>(std: Scalar, raw_terms: I) -> Self
    where
        I: IntoIterator<Item = (Scalar, Rational)>,
    {
        let one = Rational::one();
        let mut merged: BTreeMap<Rational, Scalar> = BTreeMap::new();
        for (coef, order) in raw_terms {
            if order < one || coef.is_zero() {
                continue;
            }
            match merged.get_mut(&order) {
                Some(acc) => *acc = &*acc + &coef,
                None => {
                    merged.insert(order, coef);
                }
            }
        }
        let terms = merged
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(order, coef)| Term { coef, order })
            .collect();
        FermatReal { std, terms }
    }

    /// Standard part `°x`.
    pub fn std_part(&self) -> &Scalar {
        &self.std
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `ω(x)`: the largest order in the decomposition, 0 for standard reals.
    pub fn order(&self) -> Rational {
        self.order_i(1)
    }

    /// `ω_i(x)`, 1-based; 0 when `i` is out of range.
    pub fn order_i(&self, i: usize) -> Rational {
        i.checked_sub(1)
            .and_then(|k| self.terms.get(k))
            .map(|t| t.order.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// `°x_i`, 1-based; 0 when `i` is out of range.
    pub fn std_part_i(&self, i: usize) -> Scalar {
        i.checked_sub(1)
            .and_then(|k| self.terms.get(k))
            .map(|t| t.coef.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// `δx = x − °x`.
    pub fn infinitesimal_part(&self) -> FermatReal {
        FermatReal {
            std: Scalar::zero(),
            terms: self.terms.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.std.is_zero() && self.terms.is_empty()
    }

    /// True for standard reals (no infinitesimal terms).
    pub fn is_standard(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when `°x = 0`, i.e. `x ∈ D_∞`.
    pub fn is_infinitesimal(&self) -> bool {
        self.std.is_zero()
    }

    pub fn is_invertible(&self) -> bool {
        !self.std.is_zero()
    }

    /// True when no scalar in the decomposition is an approximation.
    pub fn is_exact(&self) -> bool {
        self.std.is_exact() && self.terms.iter().all(|t| t.coef.is_exact())
    }

    /// Multiplies every scalar by `s`.
    pub fn scale(&self, s: &Scalar) -> FermatReal {
        if s.is_zero() {
            return FermatReal::zero();
        }
        FermatReal {
            std: &self.std * s,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: &t.coef * s,
                    order: t.order.clone(),
                })
                .collect(),
        }
    }

    fn add_ref(&self, other: &FermatReal) -> FermatReal {
        let raw = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|t| (t.coef.clone(), t.order.clone()));
        FermatReal::normalize(&self.std + &other.std, raw)
    }

    fn mul_ref(&self, other: &FermatReal) -> FermatReal {
        let one = Rational::one();
        let mut raw: Vec<(Scalar, Rational)> = Vec::new();
        if !other.std.is_zero() {
            raw.extend(self.terms.iter().map(|t| (&t.coef * &other.std, t.order.clone())));
        }
        if !self.std.is_zero() {
            raw.extend(other.terms.iter().map(|t| (&t.coef * &self.std, t.order.clone())));
        }
        for a in &self.terms {
            for b in &other.terms {
                let order = oplus_rat(&a.order, &b.order);
                if order < one {
                    // Terms are sorted, so every later `b` has a smaller order.
                    break;
                }
                raw.push((&a.coef * &b.coef, order));
            }
        }
        FermatReal::normalize(&self.std * &other.std, raw)
    }

    /// `x^k` for a natural `k`; `x^0 = 1`.
    pub fn pow_nat(&self, k: u32) -> FermatReal {
        let mut result = FermatReal::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Total order, deciding on the decomposition of `x − y` at the default
    /// precision.
    pub fn compare(&self, other: &FermatReal) -> Result<Ordering> {
        self.compare_with(other, Precision::default())
    }

    pub fn compare_with(&self, other: &FermatReal, prec: Precision) -> Result<Ordering> {
        (self - other).signum_with(prec)
    }

    /// Sign of `x` as an ordering against zero.
    pub fn signum_with(&self, prec: Precision) -> Result<Ordering> {
        if !self.std.is_zero() {
            return self.std.decided_sign(prec);
        }
        match self.terms.first() {
            Some(t) => t.coef.decided_sign(prec),
            None => Ok(Ordering::Equal),
        }
    }

    pub fn signum(&self) -> Result<Ordering> {
        self.signum_with(Precision::default())
    }

    pub fn lt(&self, other: &FermatReal) -> Result<bool> {
        Ok(self.compare(other)? == Ordering::Less)
    }

    pub fn le(&self, other: &FermatReal) -> Result<bool> {
        Ok(self.compare(other)? != Ordering::Greater)
    }

    pub fn abs(&self) -> Result<FermatReal> {
        Ok(match self.signum()? {
            Ordering::Less => -self,
            _ => self.clone(),
        })
    }

    pub fn min(&self, other: &FermatReal) -> Result<FermatReal> {
        Ok(match self.compare(other)? {
            Ordering::Greater => other.clone(),
            _ => self.clone(),
        })
    }

    pub fn max(&self, other: &FermatReal) -> Result<FermatReal> {
        Ok(match self.compare(other)? {
            Ordering::Less => other.clone(),
            _ => self.clone(),
        })
    }

    /// `x^-1 = (°x)^-1 · Σ_{n=0}^{⌊ω(u)⌋} (−u)^n` with `u = δx/°x`.
    pub fn invert(&self) -> Result<FermatReal> {
        let inv_std = self.std.recip().map_err(|_| FermatError::NotInvertible)?;
        let neg_u = self.infinitesimal_part().scale(&-&inv_std);
        let steps = floor_i64(&neg_u.order()).max(0);
        let mut sum = FermatReal::one();
        let mut power = FermatReal::one();
        for _ in 0..steps {
            power = &power * &neg_u;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale(&inv_std))
    }

    /// Returns one `q` with `q · y = x`.
    ///
    /// For an infinitesimal divisor with leading term `b_1·dt_{β_1}` this is
    /// long division: the leading term `a·dt_α` of the remainder contributes
    /// `(a/b_1)·dt_{α ⊖ β_1}` to `q`, or the real `a/b_1` when `α = β_1`, and
    /// its product with the rest of `y` is subtracted. Each step strictly
    /// raises `1/α` within a finite set, so the division terminates. Such a
    /// `q` exists exactly when `°x = 0` and `ω(x) <= ω(y)`; other dividends
    /// are reported as `NoExactQuotient`. Quotients by infinitesimals are
    /// never unique, since `q + dt` multiplies to the same product.
    pub fn divide(&self, divisor: &FermatReal) -> Result<FermatReal> {
        if divisor.is_zero() {
            return Err(FermatError::DivisionByZero);
        }
        if divisor.is_invertible() {
            return Ok(self * &divisor.invert()?);
        }
        let lead = &divisor.terms[0];
        let b1 = &lead.coef;
        let beta1 = &lead.order;
        if !self.std.is_zero() {
            return Err(FermatError::NoExactQuotient(
                "the dividend has a nonzero standard part but the divisor is infinitesimal".into(),
            ));
        }
        if self.order() > *beta1 {
            return Err(FermatError::NoExactQuotient(format!(
                "order {} of the dividend exceeds the divisor's order {}",
                format_rational(&self.order()),
                format_rational(beta1)
            )));
        }
        let inv_b1 = b1.recip()?;
        let tail = FermatReal::normalize(
            Scalar::zero(),
            divisor.terms[1..].iter().map(|t| (t.coef.clone(), t.order.clone())),
        );
        let mut q_std = Scalar::zero();
        let mut q_raw = Vec::new();
        let mut rem = self.clone();
        while let Some(t) = rem.terms.first() {
            let coef = &t.coef * &inv_b1;
            // Remainder orders never exceed ω(x) <= β_1.
            let piece = if t.order == *beta1 {
                q_std = &q_std + &coef;
                FermatReal::normalize(coef, [])
            } else {
                let order = ominus_rat(&t.order, beta1)?;
                q_raw.push((coef.clone(), order.clone()));
                FermatReal::normalize(Scalar::zero(), [(coef, order)])
            };
            // The leading term cancels by construction; dropping it keeps
            // inexact coefficients from leaving a rounding residue.
            let rest = FermatReal::normalize(
                Scalar::zero(),
                rem.terms[1..].iter().map(|t| (t.coef.clone(), t.order.clone())),
            );
            rem = &rest - &(&piece * &tail);
        }
        Ok(FermatReal::normalize(q_std, q_raw))
    }

    /// Solves `a + x·b = c` under `a < c < a + b`.
    pub fn solve_linear(a: &FermatReal, b: &FermatReal, c: &FermatReal) -> Result<FermatReal> {
        let upper = a + b;
        if !(a.lt(c)? && c.lt(&upper)?) {
            return Err(FermatError::PreconditionViolated("a < c < a + b does not hold".into()));
        }
        (c - a).divide(b)
    }

    /// A nonzero `y` with `x·y = 0`. Every nonzero infinitesimal is killed by
    /// `dt`, since `1/ω(x) + 1 > 1`.
    pub fn zero_divisor_witness(&self) -> Result<FermatReal> {
        if self.is_zero() || self.is_invertible() {
            return Err(FermatError::NotZeroDivisor);
        }
        FermatReal::dt(&Rational::one())
    }
}

impl Default for FermatReal {
    fn default() -> Self {
        FermatReal::zero()
    }
}

impl From<Rational> for FermatReal {
    fn from(r: Rational) -> Self {
        FermatReal::from_rational(r)
    }
}

impl From<i64> for FermatReal {
    fn from(n: i64) -> Self {
        FermatReal::from_int(n)
    }
}

impl From<Scalar> for FermatReal {
    fn from(s: Scalar) -> Self {
        FermatReal::from_scalar(s)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&FermatReal> for &FermatReal {
            type Output = FermatReal;
            fn $method(self, rhs: &FermatReal) -> FermatReal {
                let f: fn(&FermatReal, &FermatReal) -> FermatReal = $body;
                f(self, rhs)
            }
        }
        impl $tr<FermatReal> for FermatReal {
            type Output = FermatReal;
            fn $method(self, rhs: FermatReal) -> FermatReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FermatReal> for FermatReal {
            type Output = FermatReal;
            fn $method(self, rhs: &FermatReal) -> FermatReal {
                (&self).$method(rhs)
            }
        }
        impl $tr<FermatReal> for &FermatReal {
            type Output = FermatReal;
            fn $method(self, rhs: FermatReal) -> FermatReal {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&-b));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl Neg for &FermatReal {
    type Output = FermatReal;
    fn neg(self) -> FermatReal {
        FermatReal {
            std: -&self.std,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: -&t.coef,
                    order: t.order.clone(),
                })
                .collect(),
        }
    }
}

impl Neg for FermatReal {
    type Output = FermatReal;
    fn neg(self) -> FermatReal {
        -&self
    }
}

fn write_dt(f: &mut fmt::Formatter<'_>, order: &Rational) -> fmt::Result {
    if order.is_one() {
        write!(f, "dt")
    } else {
        write!(f, "dt_{}", format_rational(order))
    }
}

/// Decomposition grammar: `2 + 3*dt_2 - 1/3*dt`. Approximate scalars are
/// marked with a leading `~`.
impl fmt::Display for FermatReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.std.is_zero() {
            write!(f, "{}", self.std)?;
            first = false;
        }
        for t in &self.terms {
            let negative = t.coef.is_negative();
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let mag = t.coef.abs();
            if !mag.is_one() || !mag.is_exact() {
                write!(f, "{mag}*")?;
            }
            write_dt(f, &t.order)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn dt(a: Rational) -> FermatReal {
        FermatReal::dt(&a).unwrap()
    }

    fn c(n: i64) -> FermatReal {
        FermatReal::from_int(n)
    }

    fn q(n: i64, d: i64) -> FermatReal {
        FermatReal::from_rational(rat(n, d))
    }

    #[test]
    fn dt_construction() {
        let d2 = dt(int(2));
        assert_eq!(d2.order(), int(2));
        assert!(d2.std_part().is_zero());
        assert_eq!(d2.std_part_i(1), Scalar::one());
        assert!(dt(rat(1, 2)).is_zero());
        assert_eq!(dt(int(1)).order(), int(1));
        assert!(matches!(FermatReal::dt(&int(-1)), Err(FermatError::Domain(_))));
    }

    #[test]
    fn normalize_examples() {
        let merged = FermatReal::normalize(Scalar::zero(), [(Scalar::one(), int(2)), (Scalar::from_int(2), int(2))]);
        assert_eq!(merged, dt(int(2)).scale(&Scalar::from_int(3)));
        let dropped = FermatReal::normalize(Scalar::zero(), [(Scalar::one(), rat(1, 2))]);
        assert!(dropped.is_zero());
        let cancelled = FermatReal::normalize(
            Scalar::from_int(5),
            [(Scalar::one(), int(3)), (Scalar::from_int(-1), int(3))],
        );
        assert_eq!(cancelled, c(5));
        assert!(cancelled.is_standard());
    }

    #[test]
    fn addition_examples() {
        let d = dt(int(1));
        let d2 = dt(int(2));
        assert_eq!(&d + &d, d.scale(&Scalar::from_int(2)));
        assert!((&d2 + &-&d2).is_zero());
        let lhs = (c(1) + &d2) + (c(2) + &d);
        assert_eq!(lhs, c(3) + &d2 + &d);
        assert_eq!(lhs.order(), int(2));
    }

    #[test]
    fn multiplication_examples() {
        let d = dt(int(1));
        let d2 = dt(int(2));
        assert_eq!(&d2 * &d2, d);
        assert!((&d * &d).is_zero());
        let prod = (c(3) + &d) * (c(2) + &d2);
        assert_eq!(prod, c(6) + d2.scale(&Scalar::from_int(3)) + d.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn pow_nat_examples() {
        let d = dt(int(1));
        let d2 = dt(int(2));
        let d4 = dt(int(4));
        assert_eq!(d4.pow_nat(2), d2);
        assert_eq!((&d2 + &d).pow_nat(2), d);
        let x = dt(int(3)) + dt(rat(3, 2));
        assert_eq!(x.pow_nat(2), dt(rat(3, 2)) + d.scale(&Scalar::from_int(2)));
        assert_eq!(x.pow_nat(0), FermatReal::one());
    }

    #[test]
    fn order_accessors() {
        assert_eq!(dt(rat(3, 2)).order(), rat(3, 2));
        assert_eq!(c(5).order(), int(0));
        let x = dt(int(3)) - dt(int(1)).scale(&Scalar::from_int(3));
        assert_eq!(x.order(), int(3));
        assert_eq!(x.order_i(2), int(1));
        assert_eq!(x.order_i(3), int(0));
        assert_eq!(x.std_part_i(2), Scalar::from_int(-3));
        let y = c(4) + &x;
        assert_eq!(y.infinitesimal_part(), x);
    }

    #[test]
    fn compare_examples() {
        let d = dt(int(1));
        let x = dt(int(3)) - d.scale(&Scalar::from_int(3));
        assert_eq!(x.compare(&d), Ok(Ordering::Greater));
        assert_eq!(d.compare(&FermatReal::zero()), Ok(Ordering::Greater));
        assert_eq!(d.compare(&dt(int(2))), Ok(Ordering::Less));
        assert_eq!((c(1) + &d).compare(&c(2)), Ok(Ordering::Less));
        assert_eq!(x.compare(&x), Ok(Ordering::Equal));
    }

    #[test]
    fn compare_reports_ties_between_close_approximations() {
        let p = Precision(64);
        let a = FermatReal::from_scalar(Scalar::approx(rat(1, 3), p));
        let b = FermatReal::from_scalar(Scalar::approx(rat(1, 3) + rat(1, 1 << 62), p));
        assert_eq!(a.compare_with(&b, p), Err(FermatError::ApproximationTie));
        let far = FermatReal::from_scalar(Scalar::approx(rat(1, 2), p));
        assert_eq!(a.compare_with(&far, p), Ok(Ordering::Less));
    }

    #[test]
    fn abs_min_max() {
        let d = dt(int(1));
        let neg = -&d;
        assert_eq!(neg.abs().unwrap(), d);
        assert_eq!(d.min(&neg).unwrap(), neg);
        assert_eq!(d.max(&neg).unwrap(), d);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(c(2).invert().unwrap(), q(1, 2));
        let d = dt(int(1));
        assert_eq!((c(1) + &d).invert().unwrap(), c(1) - &d);
        assert_eq!(d.invert(), Err(FermatError::NotInvertible));
        let x = c(3) + dt(int(4)).scale(&Scalar::from_int(2)) - dt(rat(3, 2));
        assert_eq!(&x * &x.invert().unwrap(), FermatReal::one());
    }

    #[test]
    fn divide_examples() {
        let d = dt(int(1));
        let num = dt(int(2)) + &d;
        let quotient = num.divide(&dt(int(3))).unwrap();
        assert_eq!(quotient, dt(int(6)) + dt(rat(3, 2)));
        assert_eq!(d.divide(&c(2)).unwrap(), d.scale(&Scalar::exact(rat(1, 2))));
        assert!(matches!(dt(int(2)).divide(&d), Err(FermatError::NoExactQuotient(_))));
        assert_eq!(d.divide(&FermatReal::zero()), Err(FermatError::DivisionByZero));
        assert!(matches!(c(1).divide(&d), Err(FermatError::NoExactQuotient(_))));
    }

    #[test]
    fn divide_by_multi_term_infinitesimal() {
        let y = dt(int(4)).scale(&Scalar::from_int(2)) + dt(int(3)) - dt(rat(3, 2));
        let x = dt(int(3)) + dt(int(2)).scale(&Scalar::from_int(5)) + dt(int(1));
        let quotient = x.divide(&y).unwrap();
        assert_eq!(&quotient * &y, x);
    }

    #[test]
    fn solve_linear_examples() {
        let d = dt(int(1));
        let x = FermatReal::solve_linear(&FermatReal::zero(), &dt(int(3)), &(dt(int(2)) + &d)).unwrap();
        assert_eq!(x, dt(int(6)) + dt(rat(3, 2)));
        let half_dt = d.scale(&Scalar::exact(rat(1, 2)));
        assert_eq!(FermatReal::solve_linear(&FermatReal::zero(), &d, &half_dt).unwrap(), q(1, 2));
        assert_eq!(FermatReal::solve_linear(&c(1), &c(2), &c(2)).unwrap(), q(1, 2));
        assert!(matches!(
            FermatReal::solve_linear(&c(0), &d, &c(1)),
            Err(FermatError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn zero_divisor_witness_examples() {
        let d = dt(int(1));
        let w = d.zero_divisor_witness().unwrap();
        assert!((&d * &w).is_zero());
        let d2 = dt(int(2));
        assert!((&d2 * &d2.zero_divisor_witness().unwrap()).is_zero());
        assert_eq!((c(1) + &d).zero_divisor_witness(), Err(FermatError::NotZeroDivisor));
        assert_eq!(FermatReal::zero().zero_divisor_witness(), Err(FermatError::NotZeroDivisor));
    }

    #[test]
    fn display_grammar() {
        let x = c(2) + dt(int(2)).scale(&Scalar::from_int(3)) - dt(int(1)).scale(&Scalar::exact(rat(1, 3)));
        assert_eq!(x.to_string(), "2 + 3*dt_2 - 1/3*dt");
        assert_eq!(FermatReal::zero().to_string(), "0");
        assert_eq!((-dt(rat(6, 5))).to_string(), "-dt_6/5");
    }
}
