//! Exact arithmetic on Fermat reals.
//!
//! A Fermat real is a standard real plus a finite combination of nilpotent
//! infinitesimals `dt_a` (`a >= 1`). This crate provides the normal form and
//! ring/order structure, fractional powers with their completeness analysis,
//! the Fermat metrics, the ideals of the ring, extension of smooth functions,
//! and a small fractional-calculus toolkit checked against the infinitesimal
//! Taylor formula.

mod error;
pub mod extension;
pub mod fractional;
pub mod ideals;
pub mod metrics;
pub mod numeric;
mod order;
pub mod powers;
mod real;
mod scalar;

pub use error::{FermatError, Result};
pub use order::{ominus, ominus_rat, oplus, oplus_rat, ExtendedOrder};
pub use powers::{
    binom, expansion, is_complete, k_bound, loses_information, loses_information_multinomial, no_term_vanishes, nthroot,
    power, power_of_representation, power_with, scalar_power, sqrt, GammaTerm, PowerExpansion,
};
pub use real::{FermatReal, Term};
pub use scalar::{format_rational, int, parse_rational, rat, round_to_bits, Precision, Rational, Scalar};
pub use ideals::{classify_generated, ideal_member, in_da, in_ia, membership_certificate, std_morphism, Bound, IdealKind};
pub use metrics::{d_f, d_i, d_omega, eq_up_to, pseudovaluation, same_monad, OmegaValue};
pub use extension::{builtin, ext, ext_with, taylor_terms, DerivativeFn, SmoothFunction};
pub use fractional::{
    caputo, caputo_iter, eval_at_infinitesimal, eval_at_infinitesimal_with, rl_integral, taylor_fractional_check,
    taylor_fractional_check_with, FracPoly, GammaRational, TaylorOutcome,
};
