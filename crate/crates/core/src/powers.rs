//! Fractional powers of Fermat reals.
//!
//! For an infinitesimal `c = Σ b_i·dt_{β_i}` the power is defined through the
//! leading term:
//!
//! ```text
//! c^p = b_1^p · dt_{β_1/p} · (1 + Σ_{i>=2} (b_i/b_1)·dt_{β_i ⊖ β_1})^p
//! ```
//!
//! and the inner power is expanded with the binomial series. Multiplying out
//! gives one summand per multi-index `γ` over the non-leading terms:
//!
//! ```text
//! binom(p, |γ|) · (|γ|! / γ!) · b_1^p · Π (b_j/b_1)^{γ_j} · dt_{ω(c,γ) ⊕ β_1/p}
//! ```
//!
//! where `1/ω(c,γ) = Σ γ_j·(1/β_j − 1/β_1)`. A summand survives only if its
//! order is at least 1, which bounds `|γ|` by `k_{c,p} = ⌈β_2 ⊖ β_1⌉`.
//!
//! Raising to an exponent `e` can make summands vanish. The index `r` of the
//! base *loses information* when some summand that involves `b_r` drops below
//! order 1; a base where no index loses information is *complete* for `e`,
//! and for complete bases powers compose exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{FermatError, Result};
use crate::numeric;
use crate::order::{ominus_rat, ExtendedOrder};
use crate::real::FermatReal;
use crate::scalar::{ceil_i64, floor_i64, format_rational, Precision, Rational, Scalar};

/// `p(p−1)···(p−n+1)/n!`.
pub fn binom(p: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..n {
        acc *= p - Rational::from_integer(BigInt::from(i));
        acc /= Rational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// `s^p` for a rational exponent. Exact when the root is rational,
/// otherwise rounded to `prec`.
pub fn scalar_power(s: &Scalar, p: &Rational, prec: Precision) -> Result<Scalar> {
    if s.is_zero() {
        return if p.is_positive() {
            Ok(Scalar::zero())
        } else {
            Err(FermatError::ZeroBase)
        };
    }
    let m = p.numer();
    let n = p
        .denom()
        .to_u32()
        .ok_or_else(|| FermatError::Domain(format!("exponent denominator of {} is too large", format_rational(p))))?;
    if s.is_negative() && n % 2 == 0 {
        return Err(FermatError::Domain(format!(
            "negative base with exponent {} (even denominator)",
            format_rational(p)
        )));
    }
    let m_i32 = m
        .to_i32()
        .ok_or_else(|| FermatError::Domain(format!("exponent numerator of {} is too large", format_rational(p))))?;
    let flip_sign = s.is_negative() && m.is_odd();
    let mag = s.value().abs();
    let value = match numeric::exact_root(&mag, n) {
        Some(root) => {
            let v = num_traits::Pow::pow(&root, m_i32);
            Scalar::with_flag(v, s.is_exact())
        }
        None => {
            // Raising to the m-th power multiplies the relative error by |m|.
            let guard = 32 + m.magnitude().bits() as u32;
            let root = numeric::nth_root(&mag, n, prec.bits() + guard);
            let v = num_traits::Pow::pow(&root, m_i32);
            Scalar::approx(v, prec)
        }
    };
    Ok(if flip_sign { -value } else { value })
}

/// `k_{c,p}`: the largest `|γ|` that can contribute to `c^p`. Zero for bases
/// with fewer than two infinitesimal terms.
pub fn k_bound(c: &FermatReal, p: &Rational) -> u64 {
    if c.num_terms() < 2 {
        return 0;
    }
    let d = ominus_rat(&c.order_i(2), &c.order_i(1)).expect("orders of a normal form are strictly decreasing");
    let k = ceil_i64(&d).max(0) as u64;
    if p.is_integer() && p.is_positive() {
        k.min(p.to_integer().to_u64().unwrap_or(u64::MAX))
    } else {
        k
    }
}

/// One summand of the expansion of `c^p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaTerm {
    /// Exponents of the non-leading terms `b_2, …, b_N`.
    pub gamma: Vec<u32>,
    /// `ω(c,γ)`; infinite for `γ = 0`.
    pub order: ExtendedOrder,
    pub coefficient: Scalar,
}

impl GammaTerm {
    pub fn degree(&self) -> u32 {
        self.gamma.iter().sum()
    }
}

/// The multi-index expansion of `c^p` for an infinitesimal base.
///
/// Invariant: every stored `γ` has `|γ| <= k_bound` and
/// `ω(c,γ) ⊕ ω(c)/p >= 1`.
#[derive(Debug, Clone)]
pub struct PowerExpansion {
    pub base: FermatReal,
    pub exponent: Rational,
    pub k_bound: u64,
    pub gamma_terms: Vec<GammaTerm>,
}

impl PowerExpansion {
    /// `ω(c)/p`, the order of the leading summand.
    pub fn leading_order(&self) -> Rational {
        self.base.order() / &self.exponent
    }

    /// Order of the summand for `γ`: `ω(c,γ) ⊕ ω(c)/p`.
    pub fn term_order(&self, term: &GammaTerm) -> Rational {
        let lead = self.leading_order();
        match &term.order {
            ExtendedOrder::Infinite => lead,
            ExtendedOrder::Finite(o) => crate::order::oplus_rat(o, &lead),
        }
    }

    pub fn value(&self) -> FermatReal {
        let raw: Vec<_> = self
            .gamma_terms
            .iter()
            .map(|t| (t.coefficient.clone(), self.term_order(t)))
            .collect();
        FermatReal::normalize(Scalar::zero(), raw)
    }
}

/// Expansion of `c^p` for an infinitesimal `c != 0` and `p > 0`.
pub fn expansion(c: &FermatReal, p: &Rational, prec: Precision) -> Result<PowerExpansion> {
    if !c.is_infinitesimal() {
        return Err(FermatError::NotInfinitesimal);
    }
    if c.is_zero() {
        return Err(FermatError::Domain("the expansion needs a nonzero base".into()));
    }
    if !p.is_positive() {
        return Err(FermatError::Domain(format!(
            "infinitesimal bases need a positive exponent, got {}",
            format_rational(p)
        )));
    }
    let raw: Vec<(Scalar, Rational)> = c.terms().iter().map(|t| (t.coef().clone(), t.order().clone())).collect();
    let gamma_terms = expand_raw(&raw, p, prec)?;
    Ok(PowerExpansion {
        base: c.clone(),
        exponent: p.clone(),
        k_bound: k_bound(c, p),
        gamma_terms,
    })
}

/// The core enumeration. `raw[0]` is the leading term; its order must
/// strictly exceed every other order, and all orders are at least 1.
fn expand_raw(raw: &[(Scalar, Rational)], p: &Rational, prec: Precision) -> Result<Vec<GammaTerm>> {
    let (b1, beta1) = &raw[0];
    if b1.is_negative() && p.denom().is_even() {
        return Err(FermatError::Domain(format!(
            "a negative base needs an odd exponent denominator, got {}",
            format_rational(p)
        )));
    }
    let one = Rational::one();
    let budget = &one - p / beta1;
    if budget.is_negative() {
        // dt_{β_1/p} = 0 and every other summand has a smaller order.
        return Ok(Vec::new());
    }
    let lead_coef = scalar_power(b1, p, prec)?;
    let inv_b1 = b1.recip()?;
    let rest: Vec<(Scalar, Rational)> = raw[1..]
        .iter()
        .map(|(b, beta)| (b * &inv_b1, beta.recip() - beta1.recip()))
        .collect();
    let k_cap = match raw.get(1) {
        None => 0,
        Some(_) => {
            let max_beta = raw[1..].iter().map(|(_, b)| b).max().expect("nonempty");
            let d = ominus_rat(max_beta, beta1)?;
            let k = ceil_i64(&d).max(0) as u64;
            if p.is_integer() {
                k.min(p.to_integer().to_u64().unwrap_or(u64::MAX))
            } else {
                k
            }
        }
    };

    let mut out = Vec::new();
    let mut gamma = vec![0u32; rest.len()];
    enumerate(&rest, 0, &budget, k_cap, &mut gamma, &mut |g| {
        let n: u32 = g.iter().sum();
        let weight: Rational = g
            .iter()
            .zip(&rest)
            .map(|(&gj, (_, w))| w * Rational::from_integer(BigInt::from(gj)))
            .fold(Rational::zero(), |a, b| a + b);
        let order = if weight.is_zero() {
            ExtendedOrder::Infinite
        } else {
            ExtendedOrder::Finite(weight.recip())
        };
        let mut coef = Scalar::exact(binom(p, n) * Rational::from_integer(multinomial(g)));
        for (&gj, (ratio, _)) in g.iter().zip(&rest) {
            if gj > 0 {
                coef = coef * ratio.pow(gj as i32);
            }
        }
        if !coef.is_zero() {
            out.push(GammaTerm {
                gamma: g.to_vec(),
                order,
                coefficient: coef * &lead_coef,
            });
        }
    });
    Ok(out)
}

/// Visits every `γ` with `Σ γ_j·w_j <= budget` and `|γ| <= k_cap`.
fn enumerate(
    rest: &[(Scalar, Rational)],
    j: usize,
    budget: &Rational,
    k_cap: u64,
    gamma: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]),
) {
    if j == rest.len() {
        visit(gamma);
        return;
    }
    let used: u64 = gamma[..j].iter().map(|&g| u64::from(g)).sum();
    let w = &rest[j].1;
    let by_budget = floor_i64(&(budget / w)).max(0) as u64;
    let max_here = by_budget.min(k_cap - used);
    for g in 0..=max_here {
        gamma[j] = g as u32;
        let left = budget - w * Rational::from_integer(BigInt::from(g));
        enumerate(rest, j + 1, &left, k_cap, gamma, visit);
    }
    gamma[j] = 0;
}

/// `|γ|! / Π γ_j!`.
fn multinomial(gamma: &[u32]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total = 0u32;
    for &g in gamma {
        for i in 1..=g {
            total += 1;
            acc = acc * BigInt::from(total) / BigInt::from(i);
        }
    }
    acc
}

/// `c^p` at the default precision.
pub fn power(c: &FermatReal, p: &Rational) -> Result<FermatReal> {
    power_with(c, p, Precision::default())
}

/// `c^p`.
///
/// * infinitesimal `c`: the leading-term expansion above; `p > 0`.
/// * invertible `c`: `(°c)^p·(1 + u)^p` with `u = δc/°c`; any rational `p`.
/// * `c = 0`: `0` for `p > 0`, `ZeroBase` otherwise.
///
/// Negative bases need `p` with an odd denominator.
pub fn power_with(c: &FermatReal, p: &Rational, prec: Precision) -> Result<FermatReal> {
    if c.is_zero() {
        return if p.is_positive() {
            Ok(FermatReal::zero())
        } else {
            Err(FermatError::ZeroBase)
        };
    }
    if c.is_invertible() {
        return invertible_power(c, p, prec);
    }
    Ok(expansion(c, p, prec)?.value())
}

fn invertible_power(c: &FermatReal, p: &Rational, prec: Precision) -> Result<FermatReal> {
    let s = c.std_part();
    let lead = scalar_power(s, p, prec)?;
    let u = c.infinitesimal_part().scale(&s.recip()?);
    let steps = floor_i64(&u.order()).max(0) as u32;
    let mut sum = FermatReal::one();
    let mut u_pow = FermatReal::one();
    for n in 1..=steps {
        u_pow = &u_pow * &u;
        if u_pow.is_zero() {
            break;
        }
        let b = binom(p, n);
        if b.is_zero() {
            break;
        }
        sum = &sum + &u_pow.scale(&Scalar::exact(b));
    }
    Ok(sum.scale(&lead))
}

pub fn sqrt(c: &FermatReal) -> Result<FermatReal> {
    power(c, &Rational::new(BigInt::one(), BigInt::from(2)))
}

pub fn nthroot(c: &FermatReal, n: u32) -> Result<FermatReal> {
    if n == 0 {
        return Err(FermatError::Domain("the 0-th root is undefined".into()));
    }
    power(c, &Rational::new(BigInt::one(), BigInt::from(n)))
}

/// Applies the expansion to a representation `Σ b_i·dt_{β_i}` that need not
/// be in normal form: orders may repeat and appear in any order, as long as
/// the first term has the strictly largest order.
pub fn power_of_representation(raw: &[(Scalar, Rational)], p: &Rational, prec: Precision) -> Result<FermatReal> {
    let Some((b1, beta1)) = raw.first() else {
        return Err(FermatError::PreconditionViolated("empty representation".into()));
    };
    if b1.is_zero() {
        return Err(FermatError::PreconditionViolated("the leading coefficient is zero".into()));
    }
    if raw.iter().any(|(_, beta)| *beta < Rational::one()) {
        return Err(FermatError::PreconditionViolated("orders must be at least 1".into()));
    }
    if raw[1..].iter().any(|(_, beta)| beta >= beta1) {
        return Err(FermatError::PreconditionViolated(
            "the first term must have the strictly largest order".into(),
        ));
    }
    if !p.is_positive() {
        return Err(FermatError::Domain("infinitesimal bases need a positive exponent".into()));
    }
    let terms = expand_raw(raw, p, prec)?;
    let lead = beta1 / p;
    let normalized = terms.into_iter().map(|t| {
        let order = match &t.order {
            ExtendedOrder::Infinite => lead.clone(),
            ExtendedOrder::Finite(o) => crate::order::oplus_rat(o, &lead),
        };
        (t.coefficient, order)
    });
    Ok(FermatReal::normalize(Scalar::zero(), normalized))
}

fn infinitesimal_terms(x: &FermatReal, r: usize) -> Result<Vec<Rational>> {
    if !x.is_infinitesimal() {
        return Err(FermatError::NotInfinitesimal);
    }
    let len = x.num_terms();
    if r == 0 || r > len {
        return Err(FermatError::IndexOutOfRange { index: r, len });
    }
    Ok(x.terms().iter().map(|t| t.order().clone()).collect())
}

/// Whether the `r`-th term of `x` (1-based) contributes a vanishing summand
/// to `x^e`.
///
/// For `r = 1` this is `β_1 < e`. For `r > 1` it asks for a multi-index with
/// `γ_r >= 1` and `|γ| <= k_{x,e}` such that `e/β_1 + Σ γ_j·w_j > 1`, where
/// `w_j = 1/β_j − 1/β_1`. The sum is largest with `γ_r = 1` and the rest of
/// the degree on the smallest order `β_N`, so only that candidate is tested.
pub fn loses_information(x: &FermatReal, e: &Rational, r: usize) -> Result<bool> {
    let betas = infinitesimal_terms(x, r)?;
    if !e.is_positive() {
        return Err(FermatError::PreconditionViolated("the exponent must be positive".into()));
    }
    let beta1 = &betas[0];
    if r == 1 {
        return Ok(beta1 < e);
    }
    let k = k_bound(x, e);
    if k == 0 {
        return Ok(false);
    }
    let w = |b: &Rational| b.recip() - beta1.recip();
    let best = w(&betas[r - 1]) + w(betas.last().expect("nonempty")) * Rational::from_integer(BigInt::from(k - 1));
    Ok(e / beta1 + best > Rational::one())
}

/// The multinomial form of the same test: is there `η` with `|η| = q`,
/// `η_{r+1} >= 1` and `Σ η_j/β_j > 1`? Requires `q <= ⌈β_2 ⊖ β_1⌉` and
/// `1 <= r < N`. Agrees with `loses_information(x, q, r + 1)`.
pub fn loses_information_multinomial(x: &FermatReal, q: u32, r: usize) -> Result<bool> {
    if !x.is_infinitesimal() {
        return Err(FermatError::NotInfinitesimal);
    }
    let len = x.num_terms();
    if r == 0 || r + 1 > len {
        return Err(FermatError::IndexOutOfRange { index: r, len: len.saturating_sub(1) });
    }
    let betas: Vec<Rational> = x.terms().iter().map(|t| t.order().clone()).collect();
    let d = ominus_rat(&betas[1], &betas[0])?;
    if q == 0 || i64::from(q) > ceil_i64(&d) {
        return Err(FermatError::PreconditionViolated(format!(
            "q = {q} must lie in 1..=⌈β_2 ⊖ β_1⌉ = {}",
            ceil_i64(&d)
        )));
    }
    let best = betas[r].recip() + betas.last().expect("nonempty").recip() * Rational::from_integer(BigInt::from(q - 1));
    Ok(best > Rational::one())
}

/// True when no index of `x` loses information under `x^e`. Invertible
/// numbers and zero are complete.
pub fn is_complete(x: &FermatReal, e: &Rational) -> bool {
    if x.is_invertible() || x.is_zero() {
        return true;
    }
    (1..=x.num_terms()).all(|r| !loses_information(x, e, r).unwrap_or(true))
}

/// `ω_i(y) ⊕ ω_j(x) >= 1` for every pair of infinitesimal terms.
pub fn no_term_vanishes(x: &FermatReal, y: &FermatReal) -> bool {
    let one = Rational::one();
    x.terms()
        .iter()
        .all(|a| y.terms().iter().all(|b| crate::order::oplus_rat(a.order(), b.order()) >= one))
}
