//! Printing decompositions.
//!
//! Exact coefficients print as `p/q`. Inexact ones print either as the
//! shortest continued-fraction convergent within the rats tolerance, or as
//! a decimal when rats display is off. Both forms read back through the
//! parser.

use fermat_core::{format_rational, rat, FermatReal, Rational, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Significant digits of decimal output.
const DECIMAL_DIGITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplayOptions {
    pub rats: bool,
    /// Relative tolerance of `rats`.
    pub rats_tol: Rational,
}

impl Default for DisplayOptions {
    fn default() -> Self {
        DisplayOptions {
            rats: true,
            rats_tol: rat(1, 1_000_000_000),
        }
    }
}

/// The first continued-fraction convergent `r` of the value with
/// `|r - v| <= tol·max(1, |v|)`. Exact scalars come back unchanged.
pub fn rats(value: &Scalar, tol: &Rational) -> Rational {
    let v = value.value();
    if value.is_exact() {
        return v.clone();
    }
    let bound = tol * v.abs().max(Rational::one());
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut x = v.clone();
    loop {
        let a = x.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        let r = Rational::new(p2.clone(), q2.clone());
        let frac = &x - Rational::from_integer(a);
        // A rational input has a finite expansion, so this terminates.
        if (&r - v).abs() <= bound || frac.is_zero() {
            return r;
        }
        x = frac.recip();
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
}

/// Decimal rendering with `sig` significant digits, trailing zeros removed.
/// Magnitudes outside `[1e-6, 1e21)` use an exponent, as in `1.5e-7`.
pub fn format_decimal(v: &Rational, sig: usize) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let sign = if v.is_negative() { "-" } else { "" };
    let a = v.abs();
    let ten = BigInt::from(10);
    let pow10 = |e: i64| -> Rational {
        let p = num_traits::pow(ten.clone(), e.unsigned_abs() as usize);
        if e >= 0 {
            Rational::from_integer(p)
        } else {
            Rational::new(BigInt::one(), p)
        }
    };
    // 10^e <= a < 10^(e+1)
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let scaled = &a * pow10(sig as i64 - 1 - e);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let mut digits = if BigInt::from(2) * r >= *scaled.denom() { q + 1 } else { q };
    if digits == num_traits::pow(ten.clone(), sig) {
        digits /= &ten;
        e += 1;
    }
    let digits = digits.to_string();
    let digits = digits.trim_end_matches('0');
    let body = if (-6..21).contains(&e) {
        if e >= 0 {
            let int_len = e as usize + 1;
            if digits.len() <= int_len {
                format!("{digits}{}", "0".repeat(int_len - digits.len()))
            } else {
                format!("{}.{}", &digits[..int_len], &digits[int_len..])
            }
        } else {
            format!("0.{}{digits}", "0".repeat((-e - 1) as usize))
        }
    } else {
        let (head, tail) = digits.split_at(1);
        if tail.is_empty() {
            format!("{head}e{e}")
        } else {
            format!("{head}.{tail}e{e}")
        }
    };
    format!("{sign}{body}")
}

/// Signed displayed text of a scalar.
fn scalar_text(s: &Scalar, opts: &DisplayOptions) -> (bool, String) {
    if s.is_exact() || opts.rats {
        let r = rats(s, &opts.rats_tol);
        (r.is_negative(), format_rational(&r.abs()))
    } else {
        (s.is_negative(), format_decimal(&s.value().abs(), DECIMAL_DIGITS))
    }
}

/// `2 + 3*dt_2 - 1/3*dt`: standard part first (if nonzero), then terms by
/// decreasing order, a unit coefficient omitted.
pub fn format_decomposition(x: &FermatReal, opts: &DisplayOptions) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    if !x.std_part().is_zero() {
        let (neg, text) = scalar_text(x.std_part(), opts);
        if neg {
            out.push('-');
        }
        out.push_str(&text);
    }
    for t in x.terms() {
        let (neg, text) = scalar_text(t.coef(), opts);
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if text != "1" {
            out.push_str(&text);
            out.push('*');
        }
        if t.order().is_one() {
            out.push_str("dt");
        } else {
            out.push_str("dt_");
            out.push_str(&format_rational(t.order()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use fermat_core::{int, Precision};

    #[test]
    fn convergents() {
        let third = Scalar::exact(rat(1, 3));
        assert_eq!(rats(&third, &rat(1, 10)), rat(1, 3));
        let half = Scalar::approx(rat(1, 2) + rat(1, 1_000_000_000_000), Precision::default());
        assert_eq!(rats(&half, &rat(1, 1_000_000)), rat(1, 2));
        let pi = Scalar::with_flag(rat(314_159_265_358_979, 100_000_000_000_000), false);
        assert_eq!(rats(&pi, &rat(1, 100)), rat(22, 7));
        assert_eq!(rats(&pi, &rat(1, 1_000_000)), rat(355, 113));
        assert_eq!(rats(&-pi, &rat(1, 100)), rat(-22, 7));
    }

    #[test]
    fn decimals() {
        assert_eq!(format_decimal(&rat(1, 4), 20), "0.25");
        assert_eq!(format_decimal(&rat(-3, 2), 20), "-1.5");
        assert_eq!(format_decimal(&rat(1, 3), 5), "0.33333");
        assert_eq!(format_decimal(&rat(2, 3), 5), "0.66667");
        assert_eq!(format_decimal(&int(1200), 20), "1200");
        assert_eq!(format_decimal(&rat(999_999, 1_000_000), 3), "1");
        assert_eq!(format_decimal(&rat(3, 20_000_000), 20), "1.5e-7");
    }

    #[test]
    fn grammar() {
        let opts = DisplayOptions::default();
        let x = FermatReal::normalize(
            Scalar::from_int(2),
            [(Scalar::from_int(3), int(2)), (Scalar::exact(rat(-1, 3)), int(1))],
        );
        assert_eq!(format_decomposition(&x, &opts), "2 + 3*dt_2 - 1/3*dt");
        assert_eq!(format_decomposition(&FermatReal::zero(), &opts), "0");
        let y = FermatReal::normalize(Scalar::zero(), [(Scalar::from_int(-1), rat(3, 2))]);
        assert_eq!(format_decomposition(&y, &opts), "-dt_3/2");
    }
}
