use fermat_cli::{run_suite, CliError, SuiteConfig};
use fermat_core::FermatReal;

#[test]
fn powers_suite_passes_at_the_default_size() {
    let report = run_suite("powers", &SuiteConfig::default()).unwrap();
    assert!(report.ok(), "{report}");
    for law in &report.laws {
        assert_eq!(law.passed, 1000, "{}", law.law);
    }
}

#[test]
fn every_suite_passes_on_a_small_sample() {
    let cfg = SuiteConfig {
        cases: 100,
        ..SuiteConfig::default()
    };
    let report = run_suite("all", &cfg).unwrap();
    assert!(report.ok(), "{report}");
    let suites: std::collections::BTreeSet<_> = report.laws.iter().map(|l| l.suite).collect();
    assert_eq!(suites.len(), 5);
}

/// Drops the product of the two leading terms.
fn broken_mul(x: &FermatReal, y: &FermatReal) -> FermatReal {
    let product = x * y;
    match (x.terms().first(), y.terms().first()) {
        (Some(a), Some(b)) => {
            let lead = FermatReal::monomial(a.coef().clone(), a.order().clone())
                * FermatReal::monomial(b.coef().clone(), b.order().clone());
            product - lead
        }
        _ => product,
    }
}

#[test]
fn broken_multiplication_is_caught() {
    let cfg = SuiteConfig {
        cases: 200,
        mul: broken_mul,
        ..SuiteConfig::default()
    };
    let report = run_suite("all", &cfg).unwrap();
    assert!(!report.ok());
    let law = report.law("order of product").expect("law present");
    assert!(law.failed > 0);
    let example = law.counterexample.as_deref().expect("counterexample");
    assert!(example.starts_with("x = "), "{example}");
    // Laws that never multiply are unaffected.
    assert!(report.law("d_omega metric axioms").unwrap().ok());
}

#[test]
fn reports_are_reproducible() {
    let cfg = SuiteConfig {
        cases: 50,
        ..SuiteConfig::default()
    };
    let strip = |r: fermat_cli::SuiteReport| {
        r.laws.into_iter().map(|l| (l.law, l.passed, l.failed, l.skipped)).collect::<Vec<_>>()
    };
    assert_eq!(strip(run_suite("core", &cfg).unwrap()), strip(run_suite("core", &cfg).unwrap()));
}

#[test]
fn unknown_suite() {
    assert_eq!(
        run_suite("bogus", &SuiteConfig::default()).unwrap_err(),
        CliError::UnknownSuite("bogus".into())
    );
}
