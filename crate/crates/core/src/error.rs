//! Error types shared across the crate.

use alloc::string::String;
use core::fmt;

/// Errors raised by the solver library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Gamma evaluated at a pole (zero or a negative integer). Callers that
    /// want the reciprocal-gamma convention should use
    /// [`crate::special::recip_gamma`], which returns exactly 0 there.
    Pole(f64),
    /// A series hit its term cap before the stopping rule fired.
    Convergence { max_terms: usize },
    /// An input lies outside the operation's domain.
    Domain(String),
    /// A constructor rejected its inputs.
    Validation(String),
    /// Evaluation at t = 0 of a term carrying a negative power of t
    /// (theorem 3/4 solutions with lambda > 0 diverge at the origin).
    SingularEvaluation,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole(x) => write!(f, "gamma pole at x = {x}"),
            Error::Convergence { max_terms } => {
                write!(f, "series did not converge within {max_terms} terms")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Validation(msg) => write!(f, "validation error: {msg}"),
            Error::SingularEvaluation => {
                write!(f, "solution is singular at t = 0 (negative power of t)")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
