mod common;

use common::*;
use fermat_core::{
    caputo, ext, int, power, rat, rl_integral, taylor_fractional_check, FermatReal, FracPoly, GammaRational,
    Rational,
    SmoothFunction, TaylorOutcome,
};
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

fn alpha() -> impl Strategy<Value = Rational> {
    (1i64..=6, 1i64..=6).prop_map(|(p, q)| rat(p.min(q), q.max(p)))
}

fn base() -> impl Strategy<Value = Rational> {
    (0i64..=10, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

/// `(α, n, f, h)` with exponents of `f` in `{0, α, …, nα}` and
/// `1 <= ω(h) < (n+1)α`.
fn taylor_case() -> impl Strategy<Value = (Rational, u32, FracPoly, FermatReal)> {
    (alpha(), 1u32..=4, base())
        .prop_filter("(n+1)α must exceed 1", |(a, n, _)| a * Rational::from_integer((n + 1).into()) > Rational::one())
        .prop_flat_map(|(a, n, b)| {
            let d = a.denom().to_u32().unwrap();
            let top = &a * Rational::from_integer((n + 1).into());
            let span = &top - Rational::one();
            let orders = (0i64..50).prop_map(move |k| Rational::one() + &span * rat(k, 50));
            let coeffs = prop::collection::vec(small_rational(), n as usize + 1);
            (Just(a), Just(n), Just(b), coeffs, positive_infinitesimal_with(d, orders))
        })
        .prop_map(|(a, n, b, coeffs, h)| {
            let terms = coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (GammaRational::from_rational(c), &a * Rational::from_integer((i as i64).into())))
                .collect();
            (a, n, FracPoly::new(b, terms).unwrap(), h)
        })
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn taylor_formula_is_exact((a, n, f, h) in taylor_case()) {
        prop_assert_eq!(taylor_fractional_check(&f, &a, n, &h).unwrap(), TaylorOutcome::Exact);
    }

    #[test]
    fn remainder_vanishes((a, n, _f, h) in taylor_case()) {
        let top = &a * Rational::from_integer((n + 1).into());
        prop_assert!(power(&h, &top).unwrap().is_zero());
    }

    #[test]
    fn integrals_form_a_semigroup(mu in (0i64..=12, 1i64..=4).prop_map(|(n, d)| rat(n, d)), a in alpha(), b in alpha(), c in small_nonzero()) {
        let f = FracPoly::monomial(int(0), GammaRational::from_rational(c), mu).unwrap();
        let twice = rl_integral(&rl_integral(&f, &a).unwrap(), &b).unwrap();
        prop_assert_eq!(twice, rl_integral(&f, &(&a + &b)).unwrap());
    }

    #[test]
    fn caputo_kills_constants(c in small_rational(), a in alpha(), b in base()) {
        prop_assert!(caputo(&FracPoly::constant(b, c), &a).unwrap().is_zero());
    }

    #[test]
    fn caputo_undoes_integration(mu in (0i64..=12, 1i64..=4).prop_map(|(n, d)| rat(n, d)), a in alpha()) {
        let f = FracPoly::monomial(int(0), GammaRational::one(), mu).unwrap();
        prop_assert_eq!(caputo(&rl_integral(&f, &a).unwrap(), &a).unwrap(), f);
    }

    #[test]
    fn alpha_one_is_the_ordinary_derivative(coeffs in prop::collection::vec(small_rational(), 1..6)) {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (GammaRational::from_rational(c.clone()), Rational::from_integer((k as i64).into())))
            .collect();
        let f = FracPoly::new(int(0), terms).unwrap();
        let derived = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| (GammaRational::from_rational(c * Rational::from_integer((k as i64).into())), Rational::from_integer((k as i64 - 1).into())))
            .collect();
        prop_assert_eq!(caputo(&f, &Rational::one()).unwrap(), FracPoly::new(int(0), derived).unwrap());
    }

    #[test]
    fn alpha_one_matches_the_nilpotent_taylor_formula(
        coeffs in prop::collection::vec(small_rational(), 1..6),
        h in positive_infinitesimal_with(1, (0i64..50).prop_map(|k| rat(50 + k, 50))),
    ) {
        let n = coeffs.len() as u32;
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (GammaRational::from_rational(c.clone()), Rational::from_integer((k as i64).into())))
            .collect();
        let f = FracPoly::new(int(0), terms).unwrap();
        prop_assert_eq!(taylor_fractional_check(&f, &Rational::one(), n, &h).unwrap(), TaylorOutcome::Exact);
        let poly = SmoothFunction::polynomial("p", coeffs);
        let lhs = fermat_core::eval_at_infinitesimal(&f, &h).unwrap();
        prop_assert_eq!(lhs, ext(&poly, &h).unwrap());
    }
}

#[test]
fn gamma_bookkeeping_examples() {
    let half = rat(1, 2);
    let sqrt_x = FracPoly::monomial(int(0), GammaRational::one(), half.clone()).unwrap();
    let h = dt(int(1));
    assert_eq!(taylor_fractional_check(&sqrt_x, &half, 3, &h).unwrap(), TaylorOutcome::Exact);
    let v = fermat_core::eval_at_infinitesimal(&sqrt_x, &h).unwrap();
    assert_eq!(v, dt(int(2)));
    let g = GammaRational::gamma(&rat(1, 2)).unwrap();
    let approx = g.to_scalar(fermat_core::Precision::default());
    let pi_sqrt = 1.772_453_850_905_516_f64;
    assert!((approx.value().to_f64().unwrap() - pi_sqrt).abs() < 1e-15);
    assert!(!approx.is_exact());
}
