//! Named randomized law suites behind `fermat check <suite>`.
//!
//! Each law draws its inputs from a ChaCha8 stream seeded by the suite seed
//! and the law name, so a report is reproducible and independent of which
//! other laws run. Laws that filter their inputs (mostly on `k_bound`)
//! redraw until `cases` inputs have been checked.

use std::cmp::Ordering;
use std::fmt;
use std::time::{Duration, Instant};

use fermat_core::{
    classify_generated, d_f, d_omega, eq_up_to, ideal_member, in_da, is_complete, k_bound, no_term_vanishes,
    ominus_rat, oplus_rat, power_with, pseudovaluation, rl_integral, caputo, same_monad, taylor_fractional_check_with, Bound,
    FermatReal, FracPoly, GammaRational, OmegaValue, Precision, Rational, Scalar, TaylorOutcome,
};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::CliError;

pub const SUITES: [&str; 6] = ["core", "metrics", "powers", "ideals", "fractional", "all"];

/// Largest `k_bound` a law will expand; larger ones are redrawn.
pub const K_LIMIT: u64 = 10;

/// Largest `ω_2(y) ⊖ ω(y)` of an infinitesimal generator in the
/// classification law. Long division by `y` walks remainder orders on a
/// lattice whose spacing shrinks as the two leading orders approach each
/// other, so such quotients run to thousands of terms.
pub const DIVISOR_LIMIT: i64 = 20;

pub type MulFn = fn(&FermatReal, &FermatReal) -> FermatReal;

fn ring_mul(x: &FermatReal, y: &FermatReal) -> FermatReal {
    x * y
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub cases: usize,
    pub seed: u64,
    pub precision: Precision,
    /// Multiplication under test in the ring laws.
    pub mul: MulFn,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            cases: 1000,
            seed: 0x5eed_f3a7,
            precision: Precision::default(),
            mul: ring_mul,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub suite: &'static str,
    pub law: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// Draws rejected by the law's filter.
    pub skipped: usize,
    pub counterexample: Option<String>,
    pub elapsed: Duration,
}

impl LawReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub laws: Vec<LawReport>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.laws.iter().all(LawReport::ok)
    }

    pub fn law(&self, name: &str) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.law == name)
    }

    pub fn failed_laws(&self) -> impl Iterator<Item = &LawReport> {
        self.laws.iter().filter(|l| !l.ok())
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.laws {
            let status = if l.ok() { "ok" } else { "FAILED" };
            write!(f, "{:<6} {}/{}: {} passed, {} failed", status, l.suite, l.law, l.passed, l.failed)?;
            if l.skipped > 0 {
                write!(f, ", {} redrawn", l.skipped)?;
            }
            write!(f, " ({:.2}s)", l.elapsed.as_secs_f64())?;
            writeln!(f)?;
            if let Some(c) = &l.counterexample {
                writeln!(f, "       counterexample: {c}")?;
            }
        }
        let failed = self.laws.iter().filter(|l| !l.ok()).count();
        write!(f, "suite {}: {} laws, {} failed", self.name, self.laws.len(), failed)
    }
}

/// Runs a suite; `all` runs every suite. Laws execute concurrently.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, CliError> {
    let laws: Vec<&Law> = match name {
        "all" => LAWS.iter().collect(),
        _ if SUITES.contains(&name) => LAWS.iter().filter(|l| l.suite == name).collect(),
        _ => return Err(CliError::UnknownSuite(name.to_string())),
    };
    let reports = std::thread::scope(|s| {
        let handles: Vec<_> = laws.iter().map(|law| s.spawn(move || run_law(law, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("law panicked")).collect()
    });
    Ok(SuiteReport {
        name: name.to_string(),
        laws: reports,
    })
}

pub struct Ctx {
    pub mul: MulFn,
    pub precision: Precision,
}

pub enum Check {
    Pass,
    Fail(String),
    /// The drawn input does not meet the law's hypothesis.
    Skip,
}

struct Law {
    suite: &'static str,
    name: &'static str,
    check: fn(&mut ChaCha8Rng, &Ctx) -> Check,
}

/// FNV-1a, so law streams do not depend on the law's position.
fn law_seed(seed: u64, name: &str) -> u64 {
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3))
        ^ seed
}

fn run_law(law: &Law, cfg: &SuiteConfig) -> LawReport {
    let mut rng = ChaCha8Rng::seed_from_u64(law_seed(cfg.seed, law.name));
    let ctx = Ctx {
        mul: cfg.mul,
        precision: cfg.precision,
    };
    let mut report = LawReport {
        suite: law.suite,
        law: law.name,
        passed: 0,
        failed: 0,
        skipped: 0,
        counterexample: None,
        elapsed: Duration::ZERO,
    };
    let start = Instant::now();
    let max_draws = cfg.cases.saturating_mul(200).max(1000);
    while report.passed + report.failed < cfg.cases && report.skipped < max_draws {
        match (law.check)(&mut rng, &ctx) {
            Check::Pass => report.passed += 1,
            Check::Skip => report.skipped += 1,
            Check::Fail(msg) => {
                report.failed += 1;
                report.counterexample.get_or_insert(msg);
            }
        }
    }
    report.elapsed = start.elapsed();
    report
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Check::Fail(format!($($fmt)+));
        }
    };
}

/// Unwraps a library result, turning an error into a failure.
macro_rules! tryk {
    ($e:expr, $($fmt:tt)+) => {
        match $e {
            Ok(v) => v,
            Err(err) => return Check::Fail(format!("{}: {}", format!($($fmt)+), err)),
        }
    };
}

macro_rules! assume {
    ($cond:expr) => {
        if !$cond {
            return Check::Skip;
        }
    };
}

const LAWS: &[Law] = &[
    Law { suite: "core", name: "ring axioms", check: core_laws::ring_axioms },
    Law { suite: "core", name: "multiplication oracle", check: core_laws::multiplication_oracle },
    Law { suite: "core", name: "nilpotency", check: core_laws::nilpotency },
    Law { suite: "core", name: "product vanishing", check: core_laws::product_vanishing },
    Law { suite: "core", name: "order of sum", check: core_laws::order_of_sum },
    Law { suite: "core", name: "order of product", check: core_laws::order_of_product },
    Law { suite: "core", name: "cancellation", check: core_laws::cancellation },
    Law { suite: "core", name: "total order", check: core_laws::total_order },
    Law { suite: "core", name: "invertibility trichotomy", check: core_laws::invertibility },
    Law { suite: "core", name: "divide completeness", check: core_laws::divide_completeness },
    Law { suite: "core", name: "solve linear", check: core_laws::solve_linear },
    Law { suite: "metrics", name: "d_omega metric axioms", check: metric_laws::d_omega_metric },
    Law { suite: "metrics", name: "d_F pseudometric", check: metric_laws::d_f_pseudometric },
    Law { suite: "metrics", name: "small-ball rigidity", check: metric_laws::small_balls },
    Law { suite: "metrics", name: "pseudovaluation axioms", check: metric_laws::pseudovaluation_axioms },
    Law { suite: "metrics", name: "product-order lemma", check: metric_laws::product_order },
    Law { suite: "metrics", name: "eqUpTo equivalence", check: metric_laws::eq_up_to_equivalence },
    Law { suite: "powers", name: "root round trip", check: power_laws::root_round_trip },
    Law { suite: "powers", name: "left inverse up to order", check: power_laws::left_inverse },
    Law { suite: "powers", name: "complete round trip", check: power_laws::complete_round_trip },
    Law { suite: "powers", name: "complete composition", check: power_laws::complete_composition },
    Law { suite: "powers", name: "product rule", check: power_laws::product_rule },
    Law { suite: "powers", name: "exponent addition", check: power_laws::exponent_addition },
    Law { suite: "powers", name: "pure dt", check: power_laws::pure_dt },
    Law { suite: "ideals", name: "classification", check: ideal_laws::classification },
    Law { suite: "ideals", name: "D_k annihilator", check: ideal_laws::d_k_annihilator },
    Law { suite: "ideals", name: "absorption", check: ideal_laws::absorption },
    Law { suite: "fractional", name: "Taylor formula", check: fractional_laws::taylor },
    Law { suite: "fractional", name: "remainder vanishes", check: fractional_laws::remainder },
    Law { suite: "fractional", name: "integral semigroup", check: fractional_laws::semigroup },
    Law { suite: "fractional", name: "Caputo inverts integral", check: fractional_laws::caputo_inverse },
];

fn fr(r: Rational) -> FermatReal {
    FermatReal::from_rational(r)
}

fn rat(n: i64, d: i64) -> Rational {
    fermat_core::rat(n, d)
}

fn k_ok(x: &FermatReal, p: &Rational) -> bool {
    k_bound(x, p) <= K_LIMIT
}

/// Whether dividing by `y` stays within [`DIVISOR_LIMIT`].
pub fn divisor_ok(y: &FermatReal) -> bool {
    if y.is_invertible() || y.num_terms() < 2 {
        return true;
    }
    ominus_rat(&y.order_i(2), &y.order()).is_ok_and(|w| w <= Rational::from_integer(DIVISOR_LIMIT.into()))
}

/// Termwise product without `⊕`: `dt_a·dt_b` survives iff `1/a + 1/b <= 1`.
pub fn brute_force_mul(x: &FermatReal, y: &FermatReal) -> FermatReal {
    let expand = |v: &FermatReal| {
        let mut out = vec![(v.std_part().clone(), Rational::zero())];
        out.extend(v.terms().iter().map(|t| (t.coef().clone(), t.order().recip())));
        out
    };
    let (ex, ey) = (expand(x), expand(y));
    let mut std = Scalar::zero();
    let mut raw = Vec::new();
    for (a, ea) in &ex {
        for (b, eb) in &ey {
            let e = ea + eb;
            let c = a * b;
            if e.is_zero() {
                std = &std + &c;
            } else if e <= Rational::one() {
                raw.push((c, e.recip()));
            }
        }
    }
    FermatReal::normalize(std, raw)
}

mod core_laws {
    use super::*;
    use crate::suites::gen::*;

    pub fn ring_axioms(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let (x, y, z) = (fermat(rng), fermat(rng), fermat(rng));
        let m = ctx.mul;
        ensure!(&x + &y == &y + &x, "x + y != y + x for x = {x}, y = {y}");
        ensure!(m(&x, &y) == m(&y, &x), "xy != yx for x = {x}, y = {y}");
        ensure!(m(&m(&x, &y), &z) == m(&x, &m(&y, &z)), "(xy)z != x(yz) for x = {x}, y = {y}, z = {z}");
        ensure!(m(&x, &(&y + &z)) == &m(&x, &y) + &m(&x, &z), "x(y+z) != xy + xz for x = {x}, y = {y}, z = {z}");
        ensure!(m(&x, &FermatReal::one()) == x, "x·1 != x for x = {x}");
        ensure!((&x - &x).is_zero(), "x - x != 0 for x = {x}");
        Check::Pass
    }

    pub fn multiplication_oracle(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let (x, y) = (fermat(rng), fermat(rng));
        let got = (ctx.mul)(&x, &y);
        let want = brute_force_mul(&x, &y);
        ensure!(got == want, "x = {x}, y = {y}: xy = {got}, termwise product {want}");
        Check::Pass
    }

    fn pow(ctx: &Ctx, x: &FermatReal, k: u32) -> FermatReal {
        (0..k).fold(FermatReal::one(), |acc, _| (ctx.mul)(&acc, x))
    }

    pub fn nilpotency(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let x = infinitesimal(rng);
        let k = rand::Rng::random_range(rng, 2u32..=5);
        let vanishes = pow(ctx, &x, k).is_zero();
        let predicted = x.order() < Rational::from_integer(k.into());
        ensure!(vanishes == predicted, "h = {h}, k = {k}: h^k = 0 is {vanishes}, ω(h) < k is {predicted}", h = x);
        Check::Pass
    }

    pub fn product_vanishing(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let n = rand::Rng::random_range(rng, 1..=3);
        let hs: Vec<(FermatReal, u32)> = (0..n).map(|_| (infinitesimal(rng), rand::Rng::random_range(rng, 1u32..=3))).collect();
        let product = hs.iter().fold(FermatReal::one(), |acc, (h, i)| (ctx.mul)(&acc, &pow(ctx, h, *i)));
        let weight: Rational = hs.iter().map(|(h, i)| Rational::from_integer((*i).into()) / h.order()).sum();
        let predicted = weight > Rational::one();
        ensure!(
            product.is_zero() == predicted,
            "factors {:?}: product {product}, Σ i/ω = {}",
            hs.iter().map(|(h, i)| format!("({h})^{i}")).collect::<Vec<_>>(),
            fermat_core::format_rational(&weight)
        );
        Check::Pass
    }

    pub fn order_of_sum(rng: &mut ChaCha8Rng, _: &Ctx) -> Check {
        let (x, y) = (fermat(rng), fermat(rng));
        let s = &x + &y;
        ensure!(s.order() <= x.order().max(y.order()), "ω(x+y) > max for x = {x}, y = {y}");
        if x.order() != y.order() {
            ensure!(s.order() == x.order().max(y.order()), "ω(x+y) != max(ω x, ω y) for x = {x}, y = {y}");
        }
        Check::Pass
    }

    pub fn order_of_product(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let (x, y) = (infinitesimal(rng), infinitesimal(rng));
        let p = (ctx.mul)(&x, &y);
        let sum = x.order().recip() + y.order().recip();
        if sum > Rational::one() {
            ensure!(p.is_zero(), "x = {x}, y = {y}: 1/ω(x) + 1/ω(y) > 1 but xy = {p}");
        } else {
            ensure!(
                !p.is_zero() && p.order() == oplus_rat(&x.order(), &y.order()),
                "x = {x}, y = {y}: xy = {p}, expected order {}",
                fermat_core::format_rational(&sum.recip())
            );
        }
        Check::Pass
    }

    pub fn cancellation(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let x = fermat(rng);
        assume!(!x.is_zero());
        let (r, s) = (small_rational(rng), if rand::Rng::random_bool(rng, 0.5) { small_rational(rng) } else { Rational::zero() });
        let (xr, xs) = ((ctx.mul)(&x, &fr(r.clone())), (ctx.mul)(&x, &fr(s.clone())));
        ensure!((xr == xs) == (r == s), "x = {x}, r = {r}, s = {s}");
        Check::Pass
    }

    pub fn total_order(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let (x, y, z) = (fermat(rng), fermat(rng), fermat(rng));
        let p = ctx.precision;
        let le = |a: &FermatReal, b: &FermatReal| a.compare_with(b, p).map(|o| o != Ordering::Greater);
        let xy = tryk!(x.compare_with(&y, p), "compare {x} with {y}");
        let yx = tryk!(y.compare_with(&x, p), "compare {y} with {x}");
        ensure!(yx == xy.reverse(), "antisymmetry fails for x = {x}, y = {y}");
        ensure!((xy == Ordering::Equal) == (x == y), "x == y disagrees with compare for x = {x}, y = {y}");
        if tryk!(le(&x, &y), "compare") {
            ensure!(tryk!(le(&(&x + &z), &(&y + &z)), "compare"), "x <= y but x+z > y+z for x = {x}, y = {y}, z = {z}");
            if tryk!(le(&y, &z), "compare") {
                ensure!(tryk!(le(&x, &z), "compare"), "transitivity fails for x = {x}, y = {y}, z = {z}");
            }
        }
        let zero = FermatReal::zero();
        if tryk!(le(&zero, &x), "compare") && tryk!(le(&zero, &y), "compare") {
            ensure!(tryk!(le(&zero, &(ctx.mul)(&x, &y)), "compare"), "0 <= x, y but xy < 0 for x = {x}, y = {y}");
        }
        Check::Pass
    }

    pub fn invertibility(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let x = fermat(rng);
        assume!(!x.is_zero());
        match x.zero_divisor_witness() {
            Ok(w) => {
                ensure!(!x.is_invertible(), "invertible x = {x} has a zero-divisor witness");
                ensure!(!w.is_zero() && (ctx.mul)(&x, &w).is_zero(), "bad witness {w} for x = {x}");
            }
            Err(_) => {
                ensure!(x.is_invertible(), "x = {x} is neither invertible nor a zero divisor");
                let inv = tryk!(x.invert(), "invert {x}");
                ensure!((ctx.mul)(&x, &inv) == FermatReal::one(), "x·x⁻¹ != 1 for x = {x}");
            }
        }
        Check::Pass
    }

    pub fn divide_completeness(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let (x, y) = (fermat(rng), fermat(rng));
        assume!(!y.is_zero());
        let expected = y.is_invertible() || (x.std_part().is_zero() && x.order() <= y.order());
        match x.divide(&y) {
            Ok(q) => {
                ensure!(expected, "{x} / {y} succeeded unexpectedly");
                ensure!((ctx.mul)(&q, &y) == x, "({x} / {y})·y != x");
            }
            Err(e) => ensure!(!expected, "{x} / {y} failed: {e}"),
        }
        Check::Pass
    }

    pub fn solve_linear(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let (a, b, c) = linear_case(rng);
        let x = tryk!(FermatReal::solve_linear(&a, &b, &c), "solve a = {a}, b = {b}, c = {c}");
        ensure!(&a + &(ctx.mul)(&x, &b) == c, "a + x·b != c for a = {a}, b = {b}, c = {c}, x = {x}");
        Check::Pass
    }
}

mod metric_laws {
    use super::*;
    use crate::suites::gen::*;

    pub fn d_omega_metric(rng: &mut ChaCha8Rng, _: &Ctx) -> Check {
        let (x, y, z) = (fermat(rng), fermat(rng), fermat(rng));
        ensure!(d_omega(&x, &y).is_zero() == (x == y), "identity of indiscernibles for x = {x}, y = {y}");
        ensure!(d_omega(&x, &y) == d_omega(&y, &x), "symmetry for x = {x}, y = {y}");
        ensure!(
            d_omega(&x, &z) <= d_omega(&x, &y) + d_omega(&y, &z),
            "triangle inequality for x = {x}, y = {y}, z = {z}"
        );
        Check::Pass
    }

    pub fn d_f_pseudometric(rng: &mut ChaCha8Rng, _: &Ctx) -> Check {
        let (x, y, z) = (fermat(rng), fermat(rng), fermat(rng));
        ensure!(d_f(&x, &y) == d_f(&y, &x), "symmetry for x = {x}, y = {y}");
        ensure!(d_f(&x, &z) <= d_f(&x, &y) + d_f(&y, &z), "triangle inequality for x = {x}, y = {y}, z = {z}");
        ensure!(d_f(&x, &y) <= d_omega(&x, &y), "d_F > d_ω for x = {x}, y = {y}");
        ensure!(d_f(&x, &y).is_zero() == same_monad(&x, &y), "d_F = 0 disagrees with monads for x = {x}, y = {y}");
        Check::Pass
    }

    pub fn small_balls(rng: &mut ChaCha8Rng, _: &Ctx) -> Check {
        let x = fermat(rng);
        // Nearby points are likelier to hit the hypothesis.
        let y = if rand::Rng::random_bool(rng, 0.5) {
            &x + &fr(small_rational(rng))
        } else {
            fermat(rng)
        };
        let s = rat(rand::Rng::random_range(rng, 1..=50), 50);
        if d_omega(&x, &y) < s {
            let diff = &x - &y;
            ensure!(diff.is_standard(), "d_ω < {s} but x - y = {diff} for x = {x}, y = {y}");
        }
        Check::Pass
    }

    pub fn pseudovaluation_axioms(rng: &mut ChaCha8Rng, _: &Ctx) -> Check {
        let (x, y) = (infinitesimal(rng), infinitesimal(rng));
        let w = |h: &FermatReal| pseudovaluation(h);
        let prod = &x * &y;
        if prod.is_zero() {
            ensure!(tryk!(w(&prod), "v(0)") == OmegaValue::Infinite, "v(0) is finite");
        } else {
            ensure!(prod.order() <= x.order() * y.order(), "ω(xy) > ω(x)ω(y) for x = {x}, y = {y}");
        }
        let sum = &x + &y;
        if !sum.is_zero() {
            let so = tryk!(w(&sum), "v(x+y)").omega().cloned().unwrap_or_default();
            ensure!(so <= x.order().max(y.order()), "ω(x+y) > max for x = {x}, y = {y}");
        }
        ensure!(tryk!(w(&(&x - &y)), "v") == tryk!(w(&(&y - &x)), "v"), "v(x-y) != v(y-x) for x = {x}, y = {y}");
        ensure!(tryk!(w(&x), "v") == OmegaValue::Finite(x.order()), "v(x) != ω(x) for x = {x}");
        Check::Pass
    }

    pub fn product_order(rng: &mut ChaCha8Rng, _: &Ctx) -> Check {
        let (x, y, z) = (infinitesimal(rng), invertible(rng), infinitesimal(rng));
        ensure!((&x * &y).order() == x.order(), "ω(xy) != ω(x) for x = {x}, invertible y = {y}");
        let xz = &x * &z;
        if !xz.is_zero() {
            ensure!(xz.order() == oplus_rat(&x.order(), &z.order()), "ω(xz) != ω(x) ⊕ ω(z) for x = {x}, z = {z}");
        }
        Check::Pass
    }

    pub fn eq_up_to_equivalence(rng: &mut ChaCha8Rng, _: &Ctx) -> Check {
        let (x, h, g) = (fermat(rng), infinitesimal(rng), infinitesimal(rng));
        let k = h.order().max(g.order());
        let y = &x + &h;
        let z = &y + &g;
        ensure!(eq_up_to(&k, &x, &x), "reflexivity for x = {x}");
        ensure!(eq_up_to(&k, &x, &y) && eq_up_to(&k, &y, &x), "symmetry for x = {x}, y = {y}");
        ensure!(eq_up_to(&k, &x, &z), "transitivity for x = {x}, z = {z}");
        Check::Pass
    }
}

mod power_laws {
    use super::*;
    use crate::suites::gen::*;

    pub fn root_round_trip(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let (p, x) = root_case(rng);
        assume!(k_ok(&x, &p));
        let y = tryk!(power_with(&x, &p, ctx.precision), "({x})^{p}");
        let q = p.recip();
        assume!(k_ok(&y, &q));
        let back = tryk!(power_with(&y, &q, ctx.precision), "({y})^{q}");
        ensure!(back == x, "p = {p}, x = {x}: (x^p)^(1/p) = {back}");
        Check::Pass
    }

    pub fn left_inverse(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let (p, x) = root_case(rng);
        let q = p.recip();
        assume!(k_ok(&x, &q));
        let y = tryk!(power_with(&x, &q, ctx.precision), "({x})^{q}");
        assume!(!y.is_zero() && k_ok(&y, &p));
        let back = tryk!(power_with(&y, &p, ctx.precision), "({y})^{p}");
        let k = x.order_i(2).max(back.order_i(2));
        ensure!(eq_up_to(&k, &back, &x), "p = {p}, x = {x}: (x^(1/p))^p = {back} differs beyond order {k}");
        Check::Pass
    }

    pub fn complete_round_trip(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let (p, x) = root_case(rng);
        let q = p.recip();
        assume!(is_complete(&x, &q) && k_ok(&x, &q));
        let y = tryk!(power_with(&x, &q, ctx.precision), "({x})^{q}");
        assume!(k_ok(&y, &p));
        let back = tryk!(power_with(&y, &p, ctx.precision), "({y})^{p}");
        ensure!(back == x, "complete x = {x}, p = {p}: (x^(1/p))^p = {back}");
        Check::Pass
    }

    pub fn complete_composition(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let (p, x) = root_case(rng);
        let q = [rat(2, 1), rat(3, 2), rat(1, 2), rat(3, 1)][rand::Rng::random_range(rng, 0..4)].clone();
        assume!(is_complete(&x, &p) && k_ok(&x, &p));
        let xp = tryk!(power_with(&x, &p, ctx.precision), "({x})^{p}");
        let pq = &p * &q;
        assume!(k_ok(&xp, &q) && k_ok(&x, &pq));
        let lhs = tryk!(power_with(&xp, &q, ctx.precision), "({xp})^{q}");
        let rhs = tryk!(power_with(&x, &pq, ctx.precision), "({x})^{pq}");
        assume!(lhs.is_exact() && rhs.is_exact());
        ensure!(lhs == rhs, "x = {x}, p = {p}, q = {q}: (x^p)^q = {lhs}, x^(pq) = {rhs}");
        Check::Pass
    }

    pub fn product_rule(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let x = positive_infinitesimal_with(rng, 2, order_at_least_two);
        let y = positive_infinitesimal_with(rng, 2, order_at_least_two);
        assume!(no_term_vanishes(&x, &y));
        let p = rat(1, 2);
        let xy = &x * &y;
        assume!(k_ok(&xy, &p) && k_ok(&x, &p) && k_ok(&y, &p));
        let lhs = tryk!(power_with(&xy, &p, ctx.precision), "sqrt");
        let rhs = &tryk!(power_with(&x, &p, ctx.precision), "sqrt") * &tryk!(power_with(&y, &p, ctx.precision), "sqrt");
        ensure!(lhs == rhs, "x = {x}, y = {y}: sqrt(xy) = {lhs}, sqrt(x)·sqrt(y) = {rhs}");
        Check::Pass
    }

    pub fn exponent_addition(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let x = positive_infinitesimal(rng, 6);
        let p = [rat(1, 2), rat(1, 3), rat(2, 3), rat(1, 1)][rand::Rng::random_range(rng, 0..4)].clone();
        let q = [rat(1, 2), rat(1, 3), rat(5, 3), rat(2, 1)][rand::Rng::random_range(rng, 0..4)].clone();
        let s = &p + &q;
        assume!(k_ok(&x, &p) && k_ok(&x, &q) && k_ok(&x, &s));
        let lhs = &tryk!(power_with(&x, &p, ctx.precision), "x^p") * &tryk!(power_with(&x, &q, ctx.precision), "x^q");
        let rhs = tryk!(power_with(&x, &s, ctx.precision), "x^(p+q)");
        ensure!(lhs == rhs, "x = {x}, p = {p}, q = {q}: x^p·x^q = {lhs}, x^(p+q) = {rhs}");
        Check::Pass
    }

    pub fn pure_dt(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let a = order(rng);
        let d = rand::Rng::random_range(rng, 1..=3);
        let p = rat(rand::Rng::random_range(rng, d..=5), d);
        let x = tryk!(FermatReal::dt(&a), "dt");
        let got = tryk!(power_with(&x, &p, ctx.precision), "dt^p");
        let want = tryk!(FermatReal::dt(&(&a / &p)), "dt");
        ensure!(got == want, "(dt_{a})^{p} = {got}, expected {want}");
        Check::Pass
    }
}

mod ideal_laws {
    use super::*;
    use crate::suites::gen::*;

    /// `x` is in the ideal iff some generator divides it.
    fn divisible_by_some(x: &FermatReal, gens: &[FermatReal]) -> bool {
        x.is_zero() || gens.iter().any(|g| !g.is_zero() && x.divide(g).is_ok_and(|q| &q * g == *x))
    }

    pub fn classification(rng: &mut ChaCha8Rng, _: &Ctx) -> Check {
        let gens = generators(rng);
        assume!(gens.iter().all(divisor_ok));
        let kind = tryk!(classify_generated(&gens), "classify");
        for g in &gens {
            ensure!(ideal_member(g, &kind), "generator {g} not in {kind}");
        }
        for _ in 0..5 {
            let x = candidate(rng);
            let member = ideal_member(&x, &kind);
            ensure!(member == divisible_by_some(&x, &gens), "x = {x}: member of {kind} is {member}, generators {gens:?}");
        }
        Check::Pass
    }

    pub fn d_k_annihilator(rng: &mut ChaCha8Rng, _: &Ctx) -> Check {
        let x = candidate(rng);
        for k in 1..=3u32 {
            let killed = x.std_part().is_zero() && x.pow_nat(k + 1).is_zero();
            let inside = in_da(&x, &Bound::Finite(Rational::from_integer(k.into())));
            ensure!(killed == inside, "x = {x}, k = {k}: x^(k+1) = 0 is {killed}, x ∈ D_k is {inside}");
        }
        Check::Pass
    }

    pub fn absorption(rng: &mut ChaCha8Rng, _: &Ctx) -> Check {
        let (x, y, r) = (infinitesimal(rng), infinitesimal(rng), fermat(rng));
        let a = order(rng);
        for kind in [
            fermat_core::IdealKind::Ia(a.clone()),
            fermat_core::IdealKind::Da(Bound::Finite(a.clone())),
            fermat_core::IdealKind::Dinf,
        ] {
            if ideal_member(&x, &kind) && ideal_member(&y, &kind) {
                ensure!(ideal_member(&(&x + &y), &kind), "{kind} not closed under + at x = {x}, y = {y}");
                ensure!(ideal_member(&(&x * &r), &kind), "{kind} does not absorb r = {r} at x = {x}");
            }
        }
        Check::Pass
    }
}

mod fractional_laws {
    use super::*;
    use crate::suites::gen::*;

    pub fn taylor(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let (a, n, f, h) = taylor_case(rng);
        let outcome = tryk!(taylor_fractional_check_with(&f, &a, n, &h, ctx.precision), "check f = {f}, h = {h}");
        ensure!(outcome == TaylorOutcome::Exact, "α = {a}, n = {n}, f = {f}, h = {h}: {outcome:?}");
        Check::Pass
    }

    pub fn remainder(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
        let (a, n, _, h) = taylor_case(rng);
        let top = &a * Rational::from_integer((n + 1).into());
        let r = tryk!(power_with(&h, &top, ctx.precision), "h^((n+1)α)");
        ensure!(r.is_zero(), "h = {h}, (n+1)α = {top}: h^((n+1)α) = {r}");
        Check::Pass
    }

    pub fn semigroup(rng: &mut ChaCha8Rng, _: &Ctx) -> Check {
        let mu = rat(rand::Rng::random_range(rng, 0..=12), rand::Rng::random_range(rng, 1..=4));
        let (a, b) = (alpha(rng), alpha(rng));
        let c = small_nonzero(rng);
        let f = tryk!(FracPoly::monomial(Rational::zero(), GammaRational::from_rational(c), mu), "monomial");
        let twice = tryk!(rl_integral(&tryk!(rl_integral(&f, &a), "J"), &b), "J");
        let once = tryk!(rl_integral(&f, &(&a + &b)), "J");
        ensure!(twice == once, "f = {f}, α = {a}, β = {b}: J^β J^α f = {twice}, J^(α+β) f = {once}");
        Check::Pass
    }

    pub fn caputo_inverse(rng: &mut ChaCha8Rng, _: &Ctx) -> Check {
        let mu = rat(rand::Rng::random_range(rng, 0..=12), rand::Rng::random_range(rng, 1..=4));
        let a = alpha(rng);
        let f = tryk!(FracPoly::monomial(Rational::zero(), GammaRational::one(), mu), "monomial");
        let back = tryk!(caputo(&tryk!(rl_integral(&f, &a), "J"), &a), "D");
        ensure!(back == f, "f = {f}, α = {a}: D^α J^α f = {back}");
        Check::Pass
    }
}

/// Seeded random inputs shared by the suites and the acceptance run.
///
/// Numerators and denominators stay within 50; leading coefficients of
/// inputs to fractional powers are perfect powers so results stay exact.
pub mod gen {
    use std::cell::RefCell;
    use std::collections::HashMap;

    use fermat_core::{FermatReal, FracPoly, GammaRational, Rational, Scalar};
    use num_bigint::BigInt;
    use num_traits::{One, ToPrimitive, Zero};
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    use super::rat;

    pub fn small_nonzero(rng: &mut ChaCha8Rng) -> Rational {
        let n = rng.random_range(1..=50);
        let d = rng.random_range(1..=50);
        rat(if rng.random_bool(0.5) { -n } else { n }, d)
    }

    /// Zero with probability 1/8.
    pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
        if rng.random_range(0..8) == 0 {
            Rational::zero()
        } else {
            small_nonzero(rng)
        }
    }

    /// `n/d >= 1` with `n, d <= 50`.
    pub fn order(rng: &mut ChaCha8Rng) -> Rational {
        let (a, b) = (rng.random_range(1..=50), rng.random_range(1..=50));
        rat(a.max(b), a.min(b))
    }

    pub fn order_at_least_two(rng: &mut ChaCha8Rng) -> Rational {
        let d = rng.random_range(1..=25);
        let n = rng.random_range(2..=50);
        rat(n.max(2 * d), d)
    }

    fn build(std: Rational, terms: Vec<(Rational, Rational)>) -> FermatReal {
        FermatReal::normalize(Scalar::exact(std), terms.into_iter().map(|(c, o)| (Scalar::exact(c), o)))
    }

    fn terms(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Vec<(Rational, Rational)> {
        let n = rng.random_range(lo..=hi);
        (0..n).map(|_| (small_nonzero(rng), order(rng))).collect()
    }

    /// Up to four infinitesimal terms and a possibly zero standard part.
    pub fn fermat(rng: &mut ChaCha8Rng) -> FermatReal {
        let s = small_rational(rng);
        let t = terms(rng, 0, 4);
        build(s, t)
    }

    /// Nonzero, with one to four terms.
    pub fn infinitesimal(rng: &mut ChaCha8Rng) -> FermatReal {
        loop {
            let t = terms(rng, 1, 4);
            let x = build(Rational::zero(), t);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn invertible(rng: &mut ChaCha8Rng) -> FermatReal {
        let s = small_nonzero(rng);
        let t = terms(rng, 0, 4);
        build(s, t)
    }

    thread_local! {
        static PERFECT: RefCell<HashMap<u32, Vec<Rational>>> = RefCell::new(HashMap::new());
    }

    /// A positive `u^d` with numerator and denominator at most 50.
    pub fn perfect_power(rng: &mut ChaCha8Rng, d: u32) -> Rational {
        PERFECT.with(|cache| {
            let mut cache = cache.borrow_mut();
            let list = cache.entry(d).or_insert_with(|| {
                let limit = BigInt::from(50);
                let mut out = Vec::new();
                for n in 1i64..=50 {
                    for m in 1i64..=50 {
                        let r = rat(n, m);
                        if r.numer() != &BigInt::from(n) {
                            continue;
                        }
                        let p: Rational = num_traits::Pow::pow(&r, d as i32);
                        if p.numer() <= &limit && p.denom() <= &limit {
                            out.push(p);
                        }
                    }
                }
                out.sort();
                out.dedup();
                out
            });
            list[rng.random_range(0..list.len())].clone()
        })
    }

    pub fn positive_infinitesimal(rng: &mut ChaCha8Rng, d: u32) -> FermatReal {
        positive_infinitesimal_with(rng, d, order)
    }

    /// Leading coefficient a perfect `d`-th power, up to three lower terms
    /// whose orders come from `orders`.
    pub fn positive_infinitesimal_with(
        rng: &mut ChaCha8Rng,
        d: u32,
        mut orders: impl FnMut(&mut ChaCha8Rng) -> Rational,
    ) -> FermatReal {
        loop {
            let b1 = perfect_power(rng, d);
            let beta1 = orders(rng);
            let n = rng.random_range(0..=3);
            let mut raw = vec![(b1, beta1.clone())];
            let mut dominated = true;
            for _ in 0..n {
                let o = orders(rng);
                dominated &= o < beta1;
                raw.push((small_nonzero(rng), o));
            }
            if dominated {
                return build(Rational::zero(), raw);
            }
        }
    }

    /// `p` in `{1/2, 1/3, 2/3, 3/4}` and a positive infinitesimal whose
    /// leading coefficient has rational `p`-th and `1/p`-th powers.
    pub fn root_case(rng: &mut ChaCha8Rng) -> (Rational, FermatReal) {
        let p = [rat(1, 2), rat(1, 3), rat(2, 3), rat(3, 4)][rng.random_range(0..4)].clone();
        let d = num_integer::lcm(p.denom().to_u32().expect("small"), p.numer().to_u32().expect("small"));
        let x = positive_infinitesimal(rng, d);
        (p, x)
    }

    /// One to four generators, mostly infinitesimal.
    pub fn generators(rng: &mut ChaCha8Rng) -> Vec<FermatReal> {
        let n = rng.random_range(1..=4);
        (0..n).map(|_| candidate(rng)).collect()
    }

    pub fn candidate(rng: &mut ChaCha8Rng) -> FermatReal {
        if rng.random_range(0..4) == 0 {
            fermat(rng)
        } else {
            infinitesimal(rng)
        }
    }

    /// `(a, b, c)` with `a < c < a + b`, built as `c = a + x·b` for a drawn
    /// `x = k/50 + h`, `0 < k < 50`, `b > 0` infinitesimal.
    pub fn linear_case(rng: &mut ChaCha8Rng) -> (FermatReal, FermatReal, FermatReal) {
        let a = fermat(rng);
        let b = infinitesimal(rng);
        let b = if b.std_part_i(1).is_negative() { -b } else { b };
        let x_std = FermatReal::from_rational(rat(rng.random_range(1..50), 50));
        let x = if rng.random_bool(0.5) { &x_std + &infinitesimal(rng) } else { x_std };
        let c = &a + &(&x * &b);
        (a, b, c)
    }

    /// `α = p/q` with `p <= q <= 6`.
    pub fn alpha(rng: &mut ChaCha8Rng) -> Rational {
        let (p, q) = (rng.random_range(1..=6), rng.random_range(1..=6));
        rat(p.min(q), p.max(q))
    }

    /// `(α, n, f, h)` with `f` a rational-coefficient sum of `(x − a)^{iα}`,
    /// `i <= n`, and `h > 0` with `1 <= ω(h) < (n+1)α`.
    pub fn taylor_case(rng: &mut ChaCha8Rng) -> (Rational, u32, FracPoly, FermatReal) {
        loop {
            let a = alpha(rng);
            let n: u32 = rng.random_range(1..=4);
            let top = &a * Rational::from_integer((n + 1).into());
            if top <= Rational::one() {
                continue;
            }
            let base = rat(rng.random_range(0..=10), rng.random_range(1..=5));
            let coeffs: Vec<Rational> = (0..=n).map(|_| small_rational(rng)).collect();
            let f = fracpoly(&base, &a, &coeffs);
            let span = &top - Rational::one();
            let d = a.denom().to_u32().expect("small");
            let h = positive_infinitesimal_with(rng, d, |r| Rational::one() + &span * rat(r.random_range(0..50), 50));
            return (a, n, f, h);
        }
    }

    /// `Σ c_i (x − base)^{iα}`.
    pub fn fracpoly(base: &Rational, a: &Rational, coeffs: &[Rational]) -> FracPoly {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (GammaRational::from_rational(c.clone()), a * Rational::from_integer(i.into())))
            .collect();
        FracPoly::new(base.clone(), terms).expect("non-negative exponents")
    }

    /// Exact values for serialization round trips: any standard part, up to
    /// four terms.
    pub fn exact_value(rng: &mut ChaCha8Rng) -> FermatReal {
        fermat(rng)
    }
}
