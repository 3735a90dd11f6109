mod common;

use common::*;
use fermat_core::{d_f, d_i, d_omega, eq_up_to, pseudovaluation, same_monad, FermatReal, OmegaValue, Rational};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn d_omega_is_a_metric(x in fermat(), y in fermat(), z in fermat()) {
        prop_assert_eq!(d_omega(&x, &y).is_zero(), x == y);
        prop_assert_eq!(d_omega(&x, &y), d_omega(&y, &x));
        prop_assert!(d_omega(&x, &z) <= d_omega(&x, &y) + d_omega(&y, &z));
        prop_assert!((&x - &y).order() <= (&x - &z).order() + (&z - &y).order());
    }

    #[test]
    fn d_f_is_a_coarser_pseudometric(x in fermat(), y in fermat(), z in fermat()) {
        prop_assert_eq!(d_f(&x, &y), d_f(&y, &x));
        prop_assert!(d_f(&x, &z) <= d_f(&x, &y) + d_f(&y, &z));
        prop_assert!(d_f(&x, &y) <= d_omega(&x, &y));
        prop_assert_eq!(d_f(&x, &y).is_zero(), same_monad(&x, &y));
    }

    #[test]
    fn monads_collapse_under_d_f(x in fermat(), h in infinitesimal()) {
        let y = &x + &h;
        prop_assert!(x != y);
        prop_assert!(d_f(&x, &y).is_zero());
        prop_assert!(!d_omega(&x, &y).is_zero());
    }

    #[test]
    fn small_balls_are_rigid(x in fermat(), y in fermat(), s in 1i64..=50) {
        let s = Rational::new(s.into(), 50.into());
        if d_omega(&x, &y) < s {
            let diff = &x - &y;
            prop_assert!(diff.is_standard());
            prop_assert!(diff.std_part().value().abs() < s);
        }
    }

    #[test]
    fn close_points_share_infinitesimal_parts(x in fermat(), r in small_rational()) {
        let y = &x + &FermatReal::from_rational(r.clone());
        if d_omega(&x, &y) < Rational::one() {
            prop_assert_eq!(x.infinitesimal_part(), y.infinitesimal_part());
        }
    }

    #[test]
    fn higher_metrics_agree_near_the_diagonal(x in fermat(), y in fermat(), i in 1usize..5) {
        if d_omega(&x, &y) < Rational::one() {
            prop_assert_eq!(d_i(&x, &y, i), d_omega(&x, &y));
        }
    }

    #[test]
    fn pseudovaluation_axioms(x in infinitesimal(), y in infinitesimal()) {
        let w = |h: &FermatReal| pseudovaluation(h).unwrap();
        let prod = &x * &y;
        if !prod.is_zero() {
            let bound = x.order() * y.order();
            prop_assert!(prod.order() <= bound);
        } else {
            prop_assert_eq!(w(&prod), OmegaValue::Infinite);
        }
        let sum = &x + &y;
        if !sum.is_zero() {
            let sum_order = w(&sum).omega().unwrap().clone();
            prop_assert!(sum_order <= x.order().max(y.order()));
        }
        prop_assert_eq!(w(&(&x - &y)), w(&(&y - &x)));
        prop_assert_eq!(w(&x), OmegaValue::Finite(x.order()));
    }

    #[test]
    fn product_order_lemma(x in infinitesimal(), y in invertible(), z in infinitesimal()) {
        prop_assert_eq!((&x * &y).order(), x.order());
        let xz = &x * &z;
        if !xz.is_zero() {
            prop_assert_eq!(xz.order(), (x.order().recip() + z.order().recip()).recip());
        }
    }

    #[test]
    fn eq_up_to_is_an_equivalence(x in fermat(), h in infinitesimal(), g in infinitesimal()) {
        let k = h.order().max(g.order());
        let y = &x + &h;
        let z = &y + &g;
        prop_assert!(eq_up_to(&k, &x, &x));
        prop_assert!(eq_up_to(&k, &x, &y) && eq_up_to(&k, &y, &x));
        prop_assert!(eq_up_to(&k, &x, &z));
    }
}

#[test]
fn pseudovaluation_of_zero_is_infinite() {
    assert!(pseudovaluation(&FermatReal::zero()).unwrap().is_infinite());
    assert!(pseudovaluation(&FermatReal::one()).is_err());
}
