//! Fixed-point approximations of irrational constants and elementary
//! functions at rational arguments.
//!
//! Everything here works on `BigInt` mantissas scaled by `2^frac_bits`.
//! Results are converted back to rationals and rounded to the requested
//! number of significant bits by the caller (see [`crate::Scalar::approx`]).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Extra fractional bits carried through every computation.
const GUARD_BITS: u32 = 64;

fn one(f: u32) -> BigInt {
    BigInt::one() << f
}

/// Truncates toward zero, so alternating series always reach a zero term.
fn fix_mul(a: &BigInt, b: &BigInt, f: u32) -> BigInt {
    (a * b) / one(f)
}

/// `floor(r * 2^f)`.
pub(crate) fn to_fixed(r: &BigRational, f: u32) -> BigInt {
    (r.numer() << f).div_floor(r.denom())
}

pub(crate) fn from_fixed(m: BigInt, f: u32) -> BigRational {
    BigRational::new(m, one(f))
}

fn working_bits(prec: u32) -> u32 {
    prec + GUARD_BITS
}

/// `atan(1/n)` for an integer `n >= 2`.
fn atan_recip(n: u64, f: u32) -> BigInt {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut power = one(f) / &n;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &n2;
        k += 1;
    }
    sum
}

/// `pi` as a fixed-point mantissa (Machin's formula).
fn pi_fixed(f: u32) -> BigInt {
    let wf = f + 16;
    let v = atan_recip(5, wf) * 16 - atan_recip(239, wf) * 4;
    v >> 16
}

/// `atanh(x)` for a fixed-point `|x| <= 1/3`.
fn atanh_fixed(x: &BigInt, f: u32) -> BigInt {
    let x2 = fix_mul(x, x, f);
    let mut power = x.clone();
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * k + 1);
        power = fix_mul(&power, &x2, f);
        k += 1;
    }
    sum
}

fn ln2_fixed(f: u32) -> BigInt {
    let third = one(f) / BigInt::from(3);
    atanh_fixed(&third, f) * 2
}

/// Natural logarithm of a positive rational, fixed point.
fn ln_fixed(r: &BigRational, f: u32) -> BigInt {
    let wf = f + 16;
    let shift = r.numer().bits() as i64 - r.denom().bits() as i64;
    let m = if shift >= 0 {
        r / BigRational::from_integer(BigInt::one() << shift as u64)
    } else {
        r * BigRational::from_integer(BigInt::one() << (-shift) as u64)
    };
    // m lies in (1/2, 2), so t = (m - 1)/(m + 1) lies in (-1/3, 1/3).
    let t = (&m - BigRational::one()) / (&m + BigRational::one());
    let tf = to_fixed(&t, wf);
    let v = atanh_fixed(&tf, wf) * 2 + ln2_fixed(wf) * BigInt::from(shift);
    v >> 16
}

/// `exp(x)` for a fixed-point argument.
fn exp_fixed(x: &BigInt, f: u32) -> BigInt {
    const HALVINGS: u32 = 12;
    let wf = f + 32 + HALVINGS;
    let xw: BigInt = x << (wf - f);
    let ln2 = ln2_fixed(wf);
    // x = n ln2 + s with |s| <= ln2 / 2
    let n: BigInt = (&xw + (&ln2 >> 1u32)).div_floor(&ln2);
    let s = &xw - &n * &ln2;
    let s = s >> HALVINGS;
    let mut term = one(wf);
    let mut sum = BigInt::zero();
    let mut k: u64 = 1;
    while !term.is_zero() {
        sum += &term;
        term = fix_mul(&term, &s, wf) / BigInt::from(k);
        k += 1;
    }
    for _ in 0..HALVINGS {
        sum = fix_mul(&sum, &sum, wf);
    }
    let shifted = if n.is_negative() {
        let k: u64 = (-n).try_into().unwrap_or(u64::MAX);
        if k > u64::from(wf) + (sum.bits()) {
            BigInt::zero()
        } else {
            sum >> k
        }
    } else {
        let k: u64 = n.try_into().unwrap_or(u64::MAX);
        sum << k
    };
    shifted >> (wf - f)
}

/// Taylor series of sin or cos on a fixed-point argument of moderate size.
fn sin_cos_series(x: &BigInt, f: u32, start_with_sin: bool) -> BigInt {
    let x2 = fix_mul(x, x, f);
    let (mut term, mut k) = if start_with_sin {
        (x.clone(), 1u64)
    } else {
        (one(f), 0u64)
    };
    let mut sum = BigInt::zero();
    let mut sign_positive = true;
    while !term.is_zero() {
        if sign_positive {
            sum += &term;
        } else {
            sum -= &term;
        }
        term = fix_mul(&term, &x2, f) / BigInt::from((k + 1) * (k + 2));
        k += 2;
        sign_positive = !sign_positive;
    }
    sum
}

fn reduce_mod_two_pi(r: &BigRational, f: u32) -> BigInt {
    let x = to_fixed(r, f);
    let two_pi = pi_fixed(f) * 2;
    let shifted: BigInt = &x + (&two_pi >> 1u32);
    let n: BigInt = shifted.div_floor(&two_pi);
    x - n * two_pi
}

pub fn pi(prec: u32) -> BigRational {
    let f = working_bits(prec);
    from_fixed(pi_fixed(f), f)
}

pub fn ln(r: &BigRational, prec: u32) -> BigRational {
    assert!(r.is_positive(), "ln of a non-positive value");
    let f = working_bits(prec);
    from_fixed(ln_fixed(r, f), f)
}

pub fn exp(r: &BigRational, prec: u32) -> BigRational {
    let f = working_bits(prec);
    from_fixed(exp_fixed(&(to_fixed(r, f + 8) >> 8u32), f), f)
}

pub fn sin(r: &BigRational, prec: u32) -> BigRational {
    let f = working_bits(prec);
    let wf = f + 16;
    let x = reduce_mod_two_pi(r, wf);
    from_fixed(sin_cos_series(&x, wf, true) >> 16, f)
}

pub fn cos(r: &BigRational, prec: u32) -> BigRational {
    let f = working_bits(prec);
    let wf = f + 16;
    let x = reduce_mod_two_pi(r, wf);
    from_fixed(sin_cos_series(&x, wf, false) >> 16, f)
}

/// Exact integer n-th root if it exists.
pub fn exact_int_root(v: &BigInt, n: u32) -> Option<BigInt> {
    if v.is_negative() {
        if n % 2 == 0 {
            return None;
        }
        return exact_int_root(&-v, n).map(|r| -r);
    }
    let r = v.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) == *v {
        Some(r)
    } else {
        None
    }
}

/// Exact rational n-th root if it exists.
pub fn exact_root(r: &BigRational, n: u32) -> Option<BigRational> {
    let num = exact_int_root(r.numer(), n)?;
    let den = exact_int_root(r.denom(), n)?;
    Some(BigRational::new(num, den))
}

/// Approximate n-th root of a non-negative rational.
pub fn nth_root(r: &BigRational, n: u32, prec: u32) -> BigRational {
    assert!(!r.is_negative(), "even or odd roots are taken on |r|");
    // Scale so that the integer root carries enough significant bits.
    let extra = (r.denom().bits() as u32).saturating_sub(r.numer().bits() as u32 / n.max(1));
    let f = working_bits(prec) + extra;
    let scaled = (r.numer() << (u64::from(n) * u64::from(f))) / r.denom();
    from_fixed(scaled.nth_root(n), f)
}

/// Bernoulli numbers `B_0..=B_m` (with `B_1 = -1/2`).
fn bernoulli(m: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(m + 1);
    b.push(BigRational::one());
    for k in 1..=m {
        // sum_{j<k} C(k+1, j) B_j + (k+1) B_k = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(k + 1)));
    }
    b
}

/// `Gamma(q)` for a positive rational, via Stirling's series on a shifted
/// argument and the recurrence back down.
pub fn gamma(q: &BigRational, prec: u32) -> BigRational {
    assert!(q.is_positive(), "gamma is only approximated on positive rationals");
    let f = working_bits(prec) + 16;
    // With w >= f the asymptotic series reaches 2^-f within f/16 + 20 terms.
    let shift = u64::from(f);
    let w = q + BigRational::from_integer(BigInt::from(shift));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let two_pi = pi(prec + 32) * BigRational::from_integer(BigInt::from(2));

    let mut log_gamma = fix_mul(&to_fixed(&(&w - &half), f), &ln_fixed(&w, f), f) - to_fixed(&w, f)
        + (ln_fixed(&two_pi, f) >> 1);

    let max_terms = (f / 16 + 20) as usize;
    let bern = bernoulli(2 * max_terms);
    let threshold = BigRational::new(BigInt::one(), one(f));
    let mut w_power = w.clone();
    let w2 = &w * &w;
    for k in 1..=max_terms {
        let kk = BigInt::from(2 * k);
        let denom = BigRational::from_integer(&kk * (&kk - 1)) * &w_power;
        let term = &bern[2 * k] / denom;
        let small = term.abs() < threshold;
        log_gamma += to_fixed(&term, f);
        if small {
            break;
        }
        w_power = &w_power * &w2;
    }

    let big = from_fixed(exp_fixed(&log_gamma, f), f);
    let mut rising = BigRational::one();
    for j in 0..shift {
        rising *= q + BigRational::from_integer(BigInt::from(j));
    }
    big / rising
}
