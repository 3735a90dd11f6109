use num_rational::BigRational;
use thiserror::Error;

/// Errors raised by operations on Fermat reals.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FermatError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not invertible: the standard part is zero")]
    NotInvertible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no exact quotient: {0}")]
    NoExactQuotient(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("not a zero divisor")]
    NotZeroDivisor,
    #[error("approximation tie: inexact values closer than the working precision")]
    ApproximationTie,
    #[error("0^p is undefined for p <= 0")]
    ZeroBase,
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("not an infinitesimal: the standard part is nonzero")]
    NotInfinitesimal,
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("exponent {0} lies strictly between 0 and alpha")]
    UnsupportedExponent(BigRational),
    #[error("alpha = {0} is outside (0, 1]")]
    UnsupportedAlpha(BigRational),
}

pub type Result<T> = std::result::Result<T, FermatError>;
