//! Fractional kinetic equations with Srivastava-polynomial forcing terms.
//!
//! The equation solved here is the integral form
//!
//! ```text
//! N(t) - N0 f(t) = -r^a (I^a N)(t)
//! ```
//!
//! where `I^a` is the Riemann-Liouville fractional integral and the forcing
//! `f` is a Srivastava polynomial `S_w^p`, a scaled polynomial
//! `S_w^p(c^a t^a)`, or a fractional derivative of either. Solutions are
//! finite sums of terms `coeff * t^power * E_{a,b}(rate * t^a)` built from the
//! two-parameter Mittag-Leffler function.
//!
//! Modules:
//! - [`special`]: gamma, Pochhammer and Mittag-Leffler kernels
//! - [`srivastava`]: the forcing polynomial and its fractional derivative
//! - [`frac_ops`]: Riemann-Liouville integral, analytic and product-trapezoid
//! - [`closed_form`]: the Mittag-Leffler series solutions and their residual
//! - [`oracle`]: an independent weakly-singular Volterra marcher for
//!   cross-validation
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `fke-cli` crate.

#![cfg_attr(not(test), no_std)]
// `!(x > 0.0)` guards reject NaN along with the out-of-range values; the
// positive form `x <= 0.0` would silently accept NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Test oracles are frozen decimal literals on purpose, even where they
// happen to equal a std constant or carry guard digits.
#![cfg_attr(test, allow(clippy::approx_constant, clippy::excessive_precision))]

extern crate alloc;

pub mod closed_form;
pub mod error;
pub mod frac_ops;
pub mod oracle;
pub mod special;
pub mod srivastava;

pub use closed_form::{GammaMode, KineticProblem, SolutionSeries, Variant};
pub use error::{Error, Result};
pub use frac_ops::SampledCurve;
pub use oracle::OracleConfig;
pub use special::AccuracyPolicy;
pub use srivastava::{MonomialTerm, SrivastavaPoly};
