//! Riemann–Liouville integrals and Caputo derivatives of fractional
//! polynomials `Σ c_k (x − a)^{μ_k}`, with Γ-factors kept symbolic.
//!
//! On monomials both operators have closed forms:
//!
//! ```text
//! J^α (x−a)^μ = Γ(μ+1)/Γ(μ+α+1) · (x−a)^{μ+α}
//! D^α (x−a)^μ = Γ(μ+1)/Γ(μ−α+1) · (x−a)^{μ−α}     (0 < α <= 1, μ >= α)
//! D^α c       = 0
//! ```
//!
//! The fractional Taylor formula says that for `h ∈ D_{(n+1)α−1}`, `h >= 0`,
//! `f(a + h) = Σ_{i=0}^{n} h^{iα}/Γ(iα+1) · (D^{i,α} f)(a)` exactly, since
//! `h^{(n+1)α} = 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{FermatError, Result};
use crate::numeric;
use crate::powers::power_with;
use crate::real::FermatReal;
use crate::scalar::{format_rational, Precision, Rational, Scalar};

/// `rat · Π Γ(num_i) / Π Γ(den_j)`.
///
/// Normal form: every argument lies in `(0, 1)` (`Γ(1) = 1` is dropped), the
/// two multisets are sorted and disjoint, and zero has no Γ-factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaRational {
    rat: Rational,
    num: Vec<Rational>,
    den: Vec<Rational>,
}

impl GammaRational {
    pub fn from_rational(rat: Rational) -> Self {
        GammaRational {
            rat,
            num: Vec::new(),
            den: Vec::new(),
        }
    }

    pub fn one() -> Self {
        GammaRational::from_rational(Rational::one())
    }

    /// `Γ(q)` for `q > 0`.
    pub fn gamma(q: &Rational) -> Result<Self> {
        if !q.is_positive() {
            return Err(FermatError::Domain(format!(
                "Γ is only tracked at positive arguments, got {}",
                format_rational(q)
            )));
        }
        Ok(GammaRational::build(Rational::one(), vec![q.clone()], Vec::new()))
    }

    fn build(mut rat: Rational, num: Vec<Rational>, den: Vec<Rational>) -> Self {
        if rat.is_zero() {
            return GammaRational::from_rational(rat);
        }
        let one = Rational::one();
        let mut reduce = |args: Vec<Rational>, numerator: bool| -> Vec<Rational> {
            let mut kept = Vec::with_capacity(args.len());
            for mut q in args {
                // Γ(q) = (q−1)·Γ(q−1)
                while q > one {
                    q -= &one;
                    if numerator {
                        rat *= &q;
                    } else {
                        rat /= &q;
                    }
                }
                if q != one {
                    kept.push(q);
                }
            }
            kept.sort();
            kept
        };
        let num = reduce(num, true);
        let den = reduce(den, false);
        let (mut i, mut j) = (0, 0);
        let (mut n_out, mut d_out) = (Vec::new(), Vec::new());
        while i < num.len() || j < den.len() {
            match (num.get(i), den.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    n_out.push(a.clone());
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    d_out.push(b.clone());
                    j += 1;
                }
                (Some(a), None) => {
                    n_out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    d_out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        GammaRational {
            rat,
            num: n_out,
            den: d_out,
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rat
    }

    pub fn num_factors(&self) -> &[Rational] {
        &self.num
    }

    pub fn den_factors(&self) -> &[Rational] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.is_rational()
    }

    /// True when no Γ-factor is left.
    pub fn is_rational(&self) -> bool {
        self.num.is_empty() && self.den.is_empty()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rat)
    }

    /// The Γ-content, i.e. everything but the rational factor.
    fn key(&self) -> (Vec<Rational>, Vec<Rational>) {
        (self.num.clone(), self.den.clone())
    }

    pub fn mul(&self, other: &GammaRational) -> GammaRational {
        let num = self.num.iter().chain(&other.num).cloned().collect();
        let den = self.den.iter().chain(&other.den).cloned().collect();
        GammaRational::build(&self.rat * &other.rat, num, den)
    }

    pub fn div(&self, other: &GammaRational) -> Result<GammaRational> {
        if other.is_zero() {
            return Err(FermatError::DivisionByZero);
        }
        let num = self.num.iter().chain(&other.den).cloned().collect();
        let den = self.den.iter().chain(&other.num).cloned().collect();
        Ok(GammaRational::build(&self.rat / &other.rat, num, den))
    }

    pub fn scale(&self, r: &Rational) -> GammaRational {
        GammaRational::build(&self.rat * r, self.num.clone(), self.den.clone())
    }

    /// The value as a scalar: exact if no Γ-factor is left.
    pub fn to_scalar(&self, prec: Precision) -> Scalar {
        if self.is_rational() || self.is_zero() {
            return Scalar::exact(self.rat.clone());
        }
        let bits = prec.bits() + 32;
        let mut v = self.rat.clone();
        for q in &self.num {
            v *= numeric::gamma(q, bits);
        }
        for q in &self.den {
            v /= numeric::gamma(q, bits);
        }
        Scalar::approx(v, prec)
    }
}

impl fmt::Display for GammaRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.rat))?;
        for q in &self.num {
            write!(f, "*Gamma({})", format_rational(q))?;
        }
        for q in &self.den {
            write!(f, "/Gamma({})", format_rational(q))?;
        }
        Ok(())
    }
}

/// `Σ c_k (x − a)^{μ_k}` with nonzero coefficients and strictly decreasing
/// exponents `μ_k >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FracPoly {
    base: Rational,
    terms: Vec<(GammaRational, Rational)>,
}

impl FracPoly {
    pub fn zero(base: Rational) -> Self {
        FracPoly { base, terms: Vec::new() }
    }

    pub fn constant(base: Rational, c: Rational) -> Self {
        FracPoly::monomial(base, GammaRational::from_rational(c), Rational::zero())
            .expect("exponent 0 is valid")
    }

    pub fn monomial(base: Rational, coef: GammaRational, mu: Rational) -> Result<Self> {
        FracPoly::new(base, vec![(coef, mu)])
    }

    /// Sorts by exponent and merges equal exponents. Two coefficients at the
    /// same exponent must share their Γ-content, since sums of different
    /// Γ-products have no normal form here.
    pub fn new(base: Rational, terms: Vec<(GammaRational, Rational)>) -> Result<Self> {
        if base.is_negative() {
            return Err(FermatError::Domain("the base point must be non-negative".into()));
        }
        let mut merged: BTreeMap<Rational, GammaRational> = BTreeMap::new();
        for (c, mu) in terms {
            if mu.is_negative() {
                return Err(FermatError::Domain(format!("negative exponent {}", format_rational(&mu))));
            }
            if c.is_zero() {
                continue;
            }
            match merged.remove(&mu) {
                None => {
                    merged.insert(mu, c);
                }
                Some(prev) => {
                    if prev.key() != c.key() {
                        return Err(FermatError::PreconditionViolated(format!(
                            "coefficients {prev} and {c} at exponent {} cannot be added symbolically",
                            format_rational(&mu)
                        )));
                    }
                    let total = GammaRational::build(prev.rat + &c.rat, c.num.clone(), c.den.clone());
                    if !total.is_zero() {
                        merged.insert(mu, total);
                    }
                }
            }
        }
        Ok(FracPoly {
            base,
            terms: merged.into_iter().rev().map(|(mu, c)| (c, mu)).collect(),
        })
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn terms(&self) -> &[(GammaRational, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `f(a)`: the coefficient of `(x − a)^0`.
    pub fn value_at_base(&self) -> GammaRational {
        self.terms
            .iter()
            .find(|(_, mu)| mu.is_zero())
            .map(|(c, _)| c.clone())
            .unwrap_or_else(|| GammaRational::from_rational(Rational::zero()))
    }
}

impl fmt::Display for FracPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, mu)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if mu.is_zero() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*(x-{})^{}", format_rational(&self.base), format_rational(mu))?;
            }
        }
        Ok(())
    }
}

/// `J_a^α f`; `J^0` is the identity.
pub fn rl_integral(f: &FracPoly, alpha: &Rational) -> Result<FracPoly> {
    if alpha.is_negative() {
        return Err(FermatError::Domain("the integration order must be non-negative".into()));
    }
    if alpha.is_zero() {
        return Ok(f.clone());
    }
    let one = Rational::one();
    let mut out = Vec::with_capacity(f.terms.len());
    for (c, mu) in &f.terms {
        let ratio = GammaRational::gamma(&(mu + &one))?.div(&GammaRational::gamma(&(mu + alpha + &one))?)?;
        out.push((c.mul(&ratio), mu + alpha));
    }
    FracPoly::new(f.base.clone(), out)
}

/// Caputo derivative `D_a^α f` for `0 < α <= 1`.
pub fn caputo(f: &FracPoly, alpha: &Rational) -> Result<FracPoly> {
    let one = Rational::one();
    if !alpha.is_positive() || *alpha > one {
        return Err(FermatError::UnsupportedAlpha(alpha.clone()));
    }
    let mut out = Vec::with_capacity(f.terms.len());
    for (c, mu) in &f.terms {
        if mu.is_zero() {
            continue;
        }
        if mu < alpha {
            return Err(FermatError::UnsupportedExponent(mu.clone()));
        }
        let ratio = GammaRational::gamma(&(mu + &one))?.div(&GammaRational::gamma(&(mu - alpha + &one))?)?;
        out.push((c.mul(&ratio), mu - alpha));
    }
    FracPoly::new(f.base.clone(), out)
}

/// `D^{n,α} = D^α ∘ … ∘ D^α` (`n` times).
pub fn caputo_iter(f: &FracPoly, alpha: &Rational, n: u32) -> Result<FracPoly> {
    let mut g = f.clone();
    for _ in 0..n {
        g = caputo(&g, alpha)?;
    }
    Ok(g)
}

/// `h^μ`, with `h^0 = 1` even for `h = 0`.
fn h_power(h: &FermatReal, mu: &Rational, prec: Precision) -> Result<FermatReal> {
    if mu.is_zero() {
        Ok(FermatReal::one())
    } else {
        power_with(h, mu, prec)
    }
}

fn check_increment(h: &FermatReal) -> Result<()> {
    if !h.is_infinitesimal() {
        return Err(FermatError::NotInfinitesimal);
    }
    if h.signum()? == std::cmp::Ordering::Less {
        return Err(FermatError::PreconditionViolated("the increment must be non-negative".into()));
    }
    Ok(())
}

/// `f(a + h) = Σ c_k · h^{μ_k}` at the default precision.
pub fn eval_at_infinitesimal(f: &FracPoly, h: &FermatReal) -> Result<FermatReal> {
    eval_at_infinitesimal_with(f, h, Precision::default())
}

pub fn eval_at_infinitesimal_with(f: &FracPoly, h: &FermatReal, prec: Precision) -> Result<FermatReal> {
    check_increment(h)?;
    let mut sum = FermatReal::zero();
    for (c, mu) in &f.terms {
        let p = h_power(h, mu, prec)?;
        if !p.is_zero() {
            sum = &sum + &p.scale(&c.to_scalar(prec));
        }
    }
    Ok(sum)
}

/// Outcome of comparing both sides of the fractional Taylor formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TaylorOutcome {
    /// The Γ-factors cancel symbolically and both sides are identical.
    Exact,
    /// Equal after realizing Γ numerically, within the given tolerance.
    Holds(Rational),
    /// The largest coefficient of the difference.
    Fails(Rational),
}

type SymbolicSum = BTreeMap<(Vec<Rational>, Vec<Rational>), FermatReal>;

fn add_symbolic(acc: &mut SymbolicSum, c: &GammaRational, value: &FermatReal) {
    if value.is_zero() || c.is_zero() {
        return;
    }
    let term = value.scale(&Scalar::exact(c.rat.clone()));
    let entry = acc.entry(c.key()).or_insert_with(FermatReal::zero);
    *entry = &*entry + &term;
    if entry.is_zero() {
        acc.remove(&c.key());
    }
}

fn realize(sum: &SymbolicSum, prec: Precision) -> FermatReal {
    sum.iter().fold(FermatReal::zero(), |acc, ((num, den), v)| {
        let g = GammaRational {
            rat: Rational::one(),
            num: num.clone(),
            den: den.clone(),
        };
        acc + v.scale(&g.to_scalar(prec))
    })
}

/// Checks `f(a+h) = Σ_{i=0}^{n} h^{iα}/Γ(iα+1) · (D^{i,α} f)(a)` at the
/// default precision.
pub fn taylor_fractional_check(f: &FracPoly, alpha: &Rational, n: u32, h: &FermatReal) -> Result<TaylorOutcome> {
    taylor_fractional_check_with(f, alpha, n, h, Precision::default())
}

pub fn taylor_fractional_check_with(
    f: &FracPoly,
    alpha: &Rational,
    n: u32,
    h: &FermatReal,
    prec: Precision,
) -> Result<TaylorOutcome> {
    check_increment(h)?;
    let bound = alpha * Rational::from_integer((n + 1).into());
    if h.order() >= bound {
        return Err(FermatError::PreconditionViolated(format!(
            "ω(h) = {} is not below (n+1)·α = {}",
            format_rational(&h.order()),
            format_rational(&bound)
        )));
    }

    let mut lhs = SymbolicSum::new();
    for (c, mu) in &f.terms {
        add_symbolic(&mut lhs, c, &h_power(h, mu, prec)?);
    }

    let one = Rational::one();
    let mut rhs = SymbolicSum::new();
    let mut g = f.clone();
    for i in 0..=n {
        if i > 0 {
            g = caputo(&g, alpha)?;
        }
        let at_base = g.value_at_base();
        if at_base.is_zero() {
            continue;
        }
        let mu = alpha * Rational::from_integer(i.into());
        let coef = at_base.div(&GammaRational::gamma(&(&mu + &one))?)?;
        add_symbolic(&mut rhs, &coef, &h_power(h, &mu, prec)?);
    }

    if lhs == rhs {
        return Ok(TaylorOutcome::Exact);
    }
    let diff = realize(&lhs, prec) - realize(&rhs, prec);
    let residual = std::iter::once(diff.std_part())
        .chain(diff.terms().iter().map(|t| t.coef()))
        .map(|s| s.value().abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let tol = prec.tie_threshold() * Rational::from_integer(256.into());
    Ok(if residual <= tol {
        TaylorOutcome::Holds(tol)
    } else {
        TaylorOutcome::Fails(residual)
    })
}
