mod common;

use common::*;
use fermat_core::{
    expansion, int, is_complete, k_bound, loses_information, loses_information_multinomial, no_term_vanishes,
    power, power_of_representation, rat, FermatReal, Precision, Rational, Scalar,
};
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

const K_LIMIT: u64 = 10;

fn roots() -> Vec<Rational> {
    vec![rat(1, 2), rat(1, 3), rat(2, 3), rat(3, 4)]
}

fn lcm_den(ps: &[&Rational]) -> u32 {
    ps.iter()
        .map(|p| p.denom().to_u32().unwrap())
        .fold(1, num_integer::lcm)
}

/// A root exponent with a positive infinitesimal whose leading coefficient
/// is a perfect power for `p` and `1/p`.
fn root_case() -> impl Strategy<Value = (Rational, FermatReal)> {
    prop::sample::select(roots()).prop_flat_map(|p| {
        let d = lcm_den(&[&p, &p.recip()]);
        (Just(p), positive_infinitesimal(d))
    })
}

fn small_k(x: &FermatReal, p: &Rational) -> bool {
    k_bound(x, p) <= K_LIMIT
}

fn brute_force_loses(x: &FermatReal, e: &Rational, r: usize) -> bool {
    let betas: Vec<Rational> = x.terms().iter().map(|t| t.order().clone()).collect();
    let beta1 = betas[0].clone();
    if r == 1 {
        return beta1 < *e;
    }
    let k = k_bound(x, e) as u32;
    let w: Vec<Rational> = betas[1..].iter().map(|b| b.recip() - beta1.recip()).collect();
    let mut found = false;
    let mut gamma = vec![0u32; w.len()];
    fn walk(j: usize, left: u32, gamma: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if j == gamma.len() {
            visit(gamma);
            return;
        }
        for g in 0..=left {
            gamma[j] = g;
            walk(j + 1, left - g, gamma, visit);
        }
        gamma[j] = 0;
    }
    walk(0, k, &mut gamma, &mut |g| {
        if g[r - 2] == 0 {
            return;
        }
        let weight: Rational = g.iter().zip(&w).map(|(&gj, wj)| wj * Rational::from_integer(gj.into())).sum();
        if e / &beta1 + weight > Rational::one() {
            found = true;
        }
    });
    found
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn power_matches_series_oracle(
        (p, x) in prop::sample::select(vec![rat(1, 2), rat(1, 3), rat(2, 3), rat(3, 2), int(2), rat(5, 2), int(3)])
            .prop_flat_map(|p| { let d = lcm_den(&[&p]); (Just(p), positive_infinitesimal(d)) })
    ) {
        prop_assume!(small_k(&x, &p));
        let lead = exact_rational_power(x.terms()[0].coef().value(), &p).unwrap();
        let got = power(&x, &p).unwrap();
        prop_assert!(got.is_exact());
        prop_assert_eq!(got, oracle_power(&x, &p, &lead));
    }

    #[test]
    fn expansion_respects_its_invariants((p, x) in root_case()) {
        prop_assume!(small_k(&x, &p));
        let e = expansion(&x, &p, Precision::default()).unwrap();
        prop_assert_eq!(e.k_bound, k_bound(&x, &p));
        for t in &e.gamma_terms {
            prop_assert!(u64::from(t.degree()) <= e.k_bound);
            prop_assert!(e.term_order(t) >= Rational::one());
        }
    }

    #[test]
    fn root_round_trip((p, x) in root_case()) {
        prop_assume!(small_k(&x, &p));
        let y = power(&x, &p).unwrap();
        let q = p.recip();
        prop_assume!(small_k(&y, &q));
        prop_assert_eq!(power(&y, &q).unwrap(), x);
    }

    #[test]
    fn left_inverse_up_to_order((p, x) in root_case()) {
        let q = p.recip();
        prop_assume!(small_k(&x, &q));
        let y = power(&x, &q).unwrap();
        prop_assume!(!y.is_zero() && small_k(&y, &p));
        let back = power(&y, &p).unwrap();
        let k = x.order_i(2).max(back.order_i(2));
        prop_assert!(fermat_core::eq_up_to(&k, &back, &x));
    }

    #[test]
    fn leading_data_of_compositions(
        (p, x) in root_case(),
        q in prop::sample::select(vec![rat(1, 2), int(2), rat(3, 2)]),
    ) {
        prop_assume!(small_k(&x, &p));
        let xp = power(&x, &p).unwrap();
        prop_assume!(small_k(&xp, &q) && small_k(&x, &(&p * &q)));
        let lhs = power(&xp, &q);
        let rhs = power(&x, &(&p * &q));
        // Exact leading coefficients need (b_1^p)^q to be rational.
        if let (Ok(l), Ok(r)) = (lhs, rhs) {
            prop_assert_eq!(l.order(), r.order());
            if !l.is_zero() && l.is_exact() && r.is_exact() {
                prop_assert_eq!(l.std_part_i(1), r.std_part_i(1));
            }
        }
    }

    #[test]
    fn leading_data_of_products(x in positive_infinitesimal(2), y in positive_infinitesimal(2)) {
        let p = rat(1, 2);
        let xy = &x * &y;
        prop_assume!(!xy.is_zero());
        prop_assume!(small_k(&xy, &p) && small_k(&x, &p) && small_k(&y, &p));
        let lhs = power(&xy, &p).unwrap();
        let rhs = &power(&x, &p).unwrap() * &power(&y, &p).unwrap();
        prop_assert_eq!(lhs.order(), rhs.order());
        prop_assert_eq!(lhs.std_part_i(1), rhs.std_part_i(1));
    }

    #[test]
    fn exponent_addition(
        x in positive_infinitesimal(6),
        p in prop::sample::select(vec![rat(1, 2), rat(1, 3), rat(2, 3), int(1)]),
        q in prop::sample::select(vec![rat(1, 2), rat(1, 3), rat(5, 3), int(2)]),
    ) {
        let s = &p + &q;
        prop_assume!(small_k(&x, &p) && small_k(&x, &q) && small_k(&x, &s));
        let lhs = &power(&x, &p).unwrap() * &power(&x, &q).unwrap();
        prop_assert_eq!(lhs, power(&x, &s).unwrap());
    }

    #[test]
    fn completeness_gives_exact_round_trips((p, x) in root_case()) {
        let q = p.recip();
        prop_assume!(is_complete(&x, &q) && small_k(&x, &q));
        let y = power(&x, &q).unwrap();
        prop_assume!(small_k(&y, &p));
        prop_assert_eq!(power(&y, &p).unwrap(), x);
    }

    #[test]
    fn completeness_gives_exact_compositions(
        (p, x) in root_case(),
        q in prop::sample::select(vec![int(2), rat(3, 2), rat(1, 2), int(3)]),
    ) {
        prop_assume!(is_complete(&x, &p) && small_k(&x, &p));
        let xp = power(&x, &p).unwrap();
        let pq = &p * &q;
        prop_assume!(small_k(&xp, &q) && small_k(&x, &pq));
        let lhs = power(&xp, &q).unwrap();
        let rhs = power(&x, &pq).unwrap();
        prop_assume!(lhs.is_exact() && rhs.is_exact());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_rule_without_vanishing_terms(
        x in positive_infinitesimal_with(2, order_at_least_two()),
        y in positive_infinitesimal_with(2, order_at_least_two()),
    ) {
        // Orders of at least 2 keep every pairwise product alive.
        prop_assert!(no_term_vanishes(&x, &y));
        let p = rat(1, 2);
        let xy = &x * &y;
        prop_assume!(small_k(&xy, &p) && small_k(&x, &p) && small_k(&y, &p));
        prop_assert_eq!(power(&xy, &p).unwrap(), &power(&x, &p).unwrap() * &power(&y, &p).unwrap());
    }

    #[test]
    fn representation_independence(
        (p, x) in root_case(),
        splits in prop::collection::vec(1i64..4, 4),
        seed in any::<u64>(),
    ) {
        prop_assume!(small_k(&x, &p));
        let terms = x.terms();
        let mut raw = vec![(terms[0].coef().clone(), terms[0].order().clone())];
        let mut rest = Vec::new();
        for (t, &n) in terms[1..].iter().zip(&splits) {
            // Split b·dt_β into n pieces with coefficients summing to b.
            let piece = t.coef().value() / Rational::from_integer(n.into());
            for _ in 0..n {
                rest.push((Scalar::exact(piece.clone()), t.order().clone()));
            }
        }
        // Cancelling pieces below the leading order, plus sub-unit junk.
        if *terms[0].order() > Rational::one() {
            let low = (terms[0].order() + Rational::one()) / int(2);
            rest.push((Scalar::exact(int(3)), low.clone()));
            rest.push((Scalar::exact(int(-3)), low));
        }
        rest.push((Scalar::exact(int(5)), rat(1, 2)));
        let n = rest.len();
        for i in 0..n {
            rest.swap(i, (seed as usize).wrapping_add(i * 7) % n);
        }
        // Orders below 1 are rejected, so drop the sub-unit junk again.
        rest.retain(|(_, o)| *o >= Rational::one());
        raw.extend(rest);
        let got = power_of_representation(&raw, &p, Precision::default()).unwrap();
        prop_assert_eq!(got, power(&x, &p).unwrap());
    }

    #[test]
    fn leading_term_under_invertible_factor(h in infinitesimal(), y in invertible()) {
        let hy = &h * &y;
        prop_assert_eq!(hy.order(), h.order());
        prop_assert_eq!(hy.std_part_i(1).value().clone(), h.std_part_i(1).value() * y.std_part().value());
    }

    #[test]
    fn pure_dt_law(a in order(), p in (1i64..6, 1i64..4).prop_map(|(n, d)| rat(n.max(d), d))) {
        let expected = FermatReal::dt(&(&a / &p)).unwrap();
        prop_assert_eq!(power(&dt(a), &p).unwrap(), expected);
    }

    #[test]
    fn information_loss_matches_enumeration(
        x in positive_infinitesimal(1),
        e in prop::sample::select(vec![rat(1, 2), rat(1, 3), rat(3, 2), int(2), int(3), rat(5, 2)]),
    ) {
        prop_assume!(small_k(&x, &e));
        for r in 1..=x.num_terms() {
            prop_assert_eq!(loses_information(&x, &e, r).unwrap(), brute_force_loses(&x, &e, r), "r = {}", r);
        }
    }

    #[test]
    fn multinomial_form_agrees(x in positive_infinitesimal(1)) {
        prop_assume!(x.num_terms() >= 2 && small_k(&x, &int(1_000)));
        let cap = fermat_core::ominus_rat(&x.order_i(2), &x.order()).unwrap().ceil().to_integer().to_u32().unwrap();
        for q in 1..=cap {
            for r in 1..x.num_terms() {
                prop_assert_eq!(
                    loses_information_multinomial(&x, q, r).unwrap(),
                    loses_information(&x, &Rational::from_integer(q.into()), r + 1).unwrap()
                );
            }
        }
    }
}

#[test]
fn worked_examples() {
    let half = rat(1, 2);
    assert_eq!(power(&dt(int(1)), &half).unwrap(), dt(int(2)));
    assert_eq!(
        power(&(dt(int(2)) + dt(int(1))), &half).unwrap(),
        dt(int(4)) + dt(rat(4, 3)).scale(&Scalar::exact(half.clone()))
    );
    let x = dt(int(3)) + dt(rat(3, 2));
    let sq = power(&x.pow_nat(2), &half).unwrap();
    assert_eq!(sq, dt(int(3)) + dt(rat(3, 2)) - dt(int(1)).scale(&Scalar::exact(half)));
}
