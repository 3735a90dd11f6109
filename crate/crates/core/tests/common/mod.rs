//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use fermat_core::{int, rat, FermatReal, Rational, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

/// `PROPTEST_CASES` overrides the case count; rejection limits are generous
/// because several laws filter on `k_bound`.
pub fn config(cases: u32) -> ProptestConfig {
    let cases = std::env::var("PROPTEST_CASES").ok().and_then(|v| v.parse().ok()).unwrap_or(cases);
    ProptestConfig {
        cases,
        max_global_rejects: cases.saturating_mul(200),
        max_local_rejects: cases.saturating_mul(1000),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Exact Fermat reals with a nonzero standard part.
pub fn invertible() -> impl Strategy<Value = FermatReal> {
    (small_nonzero(), prop::collection::vec((small_nonzero(), order()), 0..=4)).prop_map(|(s, t)| build(s, t))
}

pub fn dt(a: Rational) -> FermatReal {
    FermatReal::dt(&a).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    rat(n, d)
}

/// Rationals `n/d` with `1 <= |n|, d <= 50`.
pub fn small_nonzero() -> impl Strategy<Value = Rational> {
    (1i64..=50, 1i64..=50, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(int(0)), small_nonzero()]
}

/// Orders `n/d >= 1` with `n, d <= 50`.
pub fn order() -> impl Strategy<Value = Rational> + Clone {
    (1i64..=50, 1i64..=50).prop_map(|(a, b)| rat(a.max(b), a.min(b)))
}

fn build(std: Rational, terms: Vec<(Rational, Rational)>) -> FermatReal {
    FermatReal::normalize(
        Scalar::exact(std),
        terms.into_iter().map(|(c, o)| (Scalar::exact(c), o)),
    )
}

/// Arbitrary exact Fermat reals with up to 4 infinitesimal terms.
pub fn fermat() -> impl Strategy<Value = FermatReal> {
    (small_rational(), prop::collection::vec((small_nonzero(), order()), 0..=4)).prop_map(|(s, t)| build(s, t))
}

/// Nonzero infinitesimals.
pub fn infinitesimal() -> impl Strategy<Value = FermatReal> {
    prop::collection::vec((small_nonzero(), order()), 1..=4)
        .prop_map(|t| build(int(0), t))
        .prop_filter("nonzero", |x| !x.is_zero())
}

/// Leading coefficients that are perfect `d`-th powers within the size bound.
pub fn perfect_power(d: u32) -> impl Strategy<Value = Rational> {
    let mut roots = Vec::new();
    for n in 1i64..=50 {
        for m in 1i64..=50 {
            let r = rat(n, m);
            let p: Rational = num_traits::Pow::pow(&r, d as i32);
            if p.numer() <= &BigInt::from(50) && p.denom() <= &BigInt::from(50) && r.numer() == &BigInt::from(n) {
                roots.push(p);
            }
        }
    }
    roots.sort();
    roots.dedup();
    prop::sample::select(roots)
}

/// Orders `n/d >= 2` with `n, d <= 50`.
pub fn order_at_least_two() -> impl Strategy<Value = Rational> + Clone {
    (1i64..=25, 2i64..=50).prop_map(|(d, n)| rat(n.max(2 * d), d))
}

/// Positive infinitesimals whose leading coefficient is a perfect `d`-th
/// power.
pub fn positive_infinitesimal(d: u32) -> impl Strategy<Value = FermatReal> {
    positive_infinitesimal_with(d, order())
}

pub fn positive_infinitesimal_with(
    d: u32,
    orders: impl Strategy<Value = Rational> + Clone,
) -> impl Strategy<Value = FermatReal> {
    (perfect_power(d), orders.clone(), prop::collection::vec((small_nonzero(), orders), 0..=3)).prop_filter_map(
        "leading term must dominate",
        |(b1, beta1, rest)| {
            if rest.iter().any(|(_, o)| *o >= beta1) {
                return None;
            }
            let mut raw = vec![(b1, beta1)];
            raw.extend(rest);
            let x = build(int(0), raw);
            (!x.is_zero()).then_some(x)
        },
    )
}

/// Truncated power-series model: `dt_a ↦ t^{1/a}`, and every exponent above
/// 1 is dropped (it is `o(t)`). Products add exponents, so this model never
/// uses `⊕`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TSeries {
    pub std: Rational,
    pub coeffs: BTreeMap<Rational, Rational>,
}

impl TSeries {
    pub fn from_real(x: &FermatReal) -> Self {
        let coeffs = x
            .terms()
            .iter()
            .map(|t| (t.order().recip(), t.coef().value().clone()))
            .collect();
        TSeries {
            std: x.std_part().value().clone(),
            coeffs,
        }
    }

    pub fn to_real(&self) -> FermatReal {
        FermatReal::normalize(
            Scalar::exact(self.std.clone()),
            self.coeffs.iter().map(|(e, c)| (Scalar::exact(c.clone()), e.recip())),
        )
    }

    pub fn constant(c: Rational) -> Self {
        TSeries {
            std: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn add(&self, other: &TSeries) -> TSeries {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            let v = coeffs.entry(e.clone()).or_insert_with(Rational::zero);
            *v += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        TSeries {
            std: &self.std + &other.std,
            coeffs,
        }
    }

    pub fn scale(&self, s: &Rational) -> TSeries {
        let mut coeffs: BTreeMap<_, _> = self.coeffs.iter().map(|(e, c)| (e.clone(), c * s)).collect();
        coeffs.retain(|_, c: &mut Rational| !c.is_zero());
        TSeries {
            std: &self.std * s,
            coeffs,
        }
    }

    pub fn mul(&self, other: &TSeries) -> TSeries {
        let one = Rational::one();
        let mut out = TSeries::constant(&self.std * &other.std);
        let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
        let mut push = |e: Rational, c: Rational| {
            if e <= one {
                *acc.entry(e).or_insert_with(Rational::zero) += c;
            }
        };
        for (e, c) in &self.coeffs {
            push(e.clone(), c * &other.std);
        }
        for (e, c) in &other.coeffs {
            push(e.clone(), c * &self.std);
        }
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                push(e1 + e2, c1 * c2);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        out.coeffs = acc;
        out
    }

    pub fn is_zero(&self) -> bool {
        self.std.is_zero() && self.coeffs.is_empty()
    }

    /// Multiplies by `t^e` for `e > 0`, dropping exponents above 1.
    pub fn shift(&self, e: &Rational) -> TSeries {
        let one = Rational::one();
        let mut coeffs = BTreeMap::new();
        if !self.std.is_zero() && *e <= one {
            coeffs.insert(e.clone(), self.std.clone());
        }
        for (k, c) in &self.coeffs {
            let k2 = k + e;
            if k2 <= one {
                coeffs.insert(k2, c.clone());
            }
        }
        TSeries {
            std: Rational::zero(),
            coeffs,
        }
    }
}

fn binom(p: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..n {
        acc = acc * (p - Rational::from_integer(i.into())) / Rational::from_integer((i + 1).into());
    }
    acc
}

/// `(1 + u)^p` for `u` with zero standard part, summing the binomial series
/// until `u^n` vanishes in the model.
pub fn one_plus_pow(u: &TSeries, p: &Rational) -> TSeries {
    assert!(u.std.is_zero());
    let mut sum = TSeries::constant(Rational::one());
    let mut u_pow = TSeries::constant(Rational::one());
    let mut n = 0u32;
    loop {
        n += 1;
        u_pow = u_pow.mul(u);
        if u_pow.is_zero() {
            break;
        }
        sum = sum.add(&u_pow.scale(&binom(p, n)));
    }
    sum
}

/// `c^p` for an infinitesimal `c` whose leading coefficient has an exact
/// `p`-th power `lead_pow`, computed in the t-series model.
pub fn oracle_power(c: &FermatReal, p: &Rational, lead_pow: &Rational) -> FermatReal {
    let terms = c.terms();
    let b1 = terms[0].coef().value();
    let beta1 = terms[0].order();
    let mut u = TSeries::constant(Rational::zero());
    for t in &terms[1..] {
        // (b_j/b_1)·dt_{β_j ⊖ β_1} ↦ t^{1/β_j − 1/β_1}
        let e = t.order().recip() - beta1.recip();
        u.coeffs.insert(e, t.coef().value() / b1);
    }
    let inner = one_plus_pow(&u, p);
    inner.scale(lead_pow).shift(&(p / beta1)).to_real()
}

/// Exact `r^p` when it is rational.
pub fn exact_rational_power(r: &Rational, p: &Rational) -> Option<Rational> {
    let root = fermat_core::numeric::exact_root(&r.abs(), u32::try_from(p.denom().clone()).ok()?)?;
    let m = i32::try_from(p.numer().clone()).ok()?;
    let v: Rational = num_traits::Pow::pow(&root, m);
    Some(if r.is_negative() { -v } else { v })
}

/// Whether long division by `y` stays small: nearly equal leading orders
/// (`ω_2(y) ⊖ ω(y)` large) give quotients with thousands of terms.
pub fn cheap_divisor(y: &FermatReal) -> bool {
    y.is_invertible()
        || y.num_terms() < 2
        || fermat_core::ominus_rat(&y.order_i(2), &y.order()).is_ok_and(|w| w <= int(20))
}
