//! Extending smooth real functions to Fermat reals.
//!
//! Since `δx^j = 0` once `j > ω(δx)`, the Taylor formula at `°x` is a finite
//! sum and defines `f(x)` exactly:
//! `f(x) = Σ_{j=0}^{⌊ω(δx)⌋} f^(j)(°x)·δx^j / j!`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{FermatError, Result};
use crate::numeric;
use crate::real::FermatReal;
use crate::scalar::{floor_i64, Precision, Rational, Scalar};

/// `(point, n, precision) ↦ f^(n)(point)`.
pub type DerivativeFn = dyn Fn(&Scalar, u32, Precision) -> Result<Scalar> + Send + Sync;

/// A smooth function given by its derivatives at real points.
#[derive(Clone)]
pub struct SmoothFunction {
    name: String,
    oracle: Arc<DerivativeFn>,
    exact_at_zero: bool,
}

impl fmt::Debug for SmoothFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothFunction")
            .field("name", &self.name)
            .field("exact_at_zero", &self.exact_at_zero)
            .finish_non_exhaustive()
    }
}

impl SmoothFunction {
    /// The oracle must be deterministic.
    pub fn new<F>(name: impl Into<String>, exact_at_zero: bool, oracle: F) -> Self
    where
        F: Fn(&Scalar, u32, Precision) -> Result<Scalar> + Send + Sync + 'static,
    {
        SmoothFunction {
            name: name.into(),
            oracle: Arc::new(oracle),
            exact_at_zero,
        }
    }

    /// `Σ c_k t^k` with `coeffs[k] = c_k`; all derivatives are exact.
    pub fn polynomial(name: impl Into<String>, coeffs: Vec<Rational>) -> Self {
        SmoothFunction::new(name, true, move |at, n, _| {
            // f^(n)(a) = Σ_{k>=n} c_k · k!/(k−n)! · a^(k−n), by Horner.
            let mut acc = Scalar::zero();
            for k in (n as usize..coeffs.len()).rev() {
                let falling = falling_factorial(k as u64, n);
                acc = &(&acc * at) + &Scalar::exact(&coeffs[k] * Rational::from_integer(falling));
            }
            Ok(acc)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn exact_at_zero(&self) -> bool {
        self.exact_at_zero
    }

    pub fn derivative(&self, at: &Scalar, n: u32, prec: Precision) -> Result<Scalar> {
        (self.oracle)(at, n, prec)
    }
}

fn falling_factorial(k: u64, n: u32) -> BigInt {
    (0..u64::from(n)).fold(BigInt::one(), |acc, i| acc * BigInt::from(k - i))
}

fn factorial(n: u32) -> BigInt {
    falling_factorial(u64::from(n), n)
}

/// Wraps a numeric value: exact if `exact` holds, else rounded.
fn realize(value: Rational, exact: bool, prec: Precision) -> Scalar {
    if exact {
        Scalar::exact(value)
    } else {
        Scalar::approx(value, prec)
    }
}

fn sin_cos_derivative(at: &Scalar, n: u32, prec: Precision, phase: u32) -> Scalar {
    // d^n/dt^n sin(t) = sin(t + nπ/2); cos is sin shifted by one.
    let k = (n + phase) % 4;
    let a = at.value();
    let (value, exact) = if a.is_zero() {
        let v = match k {
            0 | 2 => Rational::zero(),
            1 => Rational::one(),
            _ => -Rational::one(),
        };
        (v, at.is_exact())
    } else {
        let v = match k {
            0 => numeric::sin(a, prec.bits()),
            1 => numeric::cos(a, prec.bits()),
            2 => -numeric::sin(a, prec.bits()),
            _ => -numeric::cos(a, prec.bits()),
        };
        (v, false)
    };
    realize(value, exact, prec)
}

/// `f^(n)` of `ln(t)` at `t = a > 0`.
fn log_derivative(a: &Scalar, n: u32, prec: Precision) -> Result<Scalar> {
    if !a.is_positive() {
        return Err(FermatError::Domain(format!("log needs a positive standard part, got {a}")));
    }
    if n == 0 {
        return Ok(if a.is_one() {
            Scalar::with_flag(Rational::zero(), a.is_exact())
        } else {
            Scalar::approx(numeric::ln(a.value(), prec.bits()), prec)
        });
    }
    // (−1)^(n−1) (n−1)! / a^n
    let mut v = Rational::from_integer(factorial(n - 1)) / num_traits::Pow::pow(a.value(), n);
    if n % 2 == 0 {
        v = -v;
    }
    Ok(Scalar::with_flag(v, a.is_exact()))
}

/// `sin`, `cos`, `exp`, `log` or `log1p`.
pub fn builtin(name: &str) -> Result<SmoothFunction> {
    Ok(match name {
        "sin" => SmoothFunction::new("sin", true, |a, n, p| Ok(sin_cos_derivative(a, n, p, 0))),
        "cos" => SmoothFunction::new("cos", true, |a, n, p| Ok(sin_cos_derivative(a, n, p, 1))),
        "exp" => SmoothFunction::new("exp", true, |a, _, p| {
            Ok(if a.is_zero() {
                Scalar::with_flag(Rational::one(), a.is_exact())
            } else {
                Scalar::approx(numeric::exp(a.value(), p.bits()), p)
            })
        }),
        "log" => SmoothFunction::new("log", false, log_derivative),
        "log1p" => SmoothFunction::new("log1p", true, |a, n, p| {
            let shifted = a + &Scalar::one();
            log_derivative(&shifted, n, p).map_err(|_| {
                FermatError::Domain(format!("log1p needs a standard part above -1, got {a}"))
            })
        }),
        other => return Err(FermatError::UnknownFunction(other.to_string())),
    })
}

/// `f(x)` at the default precision.
pub fn ext(f: &SmoothFunction, x: &FermatReal) -> Result<FermatReal> {
    ext_with(f, x, Precision::default())
}

pub fn ext_with(f: &SmoothFunction, x: &FermatReal, prec: Precision) -> Result<FermatReal> {
    let a = x.std_part();
    let h = x.infinitesimal_part();
    let top = floor_i64(&h.order()).max(0) as u32;
    let mut sum = FermatReal::from_scalar(f.derivative(a, 0, prec)?);
    let mut h_pow = FermatReal::one();
    for j in 1..=top {
        h_pow = &h_pow * &h;
        if h_pow.is_zero() {
            break;
        }
        let d = f.derivative(a, j, prec)?;
        if d.is_zero() {
            continue;
        }
        let weight = &d * &Scalar::exact(Rational::new(BigInt::one(), factorial(j)));
        sum = &sum + &h_pow.scale(&weight);
    }
    Ok(sum)
}

/// Number of Taylor terms `ext` consults for `x`, i.e. `⌊ω(δx)⌋ + 1`.
pub fn taylor_terms(x: &FermatReal) -> u32 {
    floor_i64(&x.infinitesimal_part().order()).max(0) as u32 + 1
}

impl SmoothFunction {
    /// Applies the function to a standard real value.
    pub fn eval(&self, at: &Scalar, prec: Precision) -> Result<Scalar> {
        self.derivative(at, 0, prec)
    }
}
