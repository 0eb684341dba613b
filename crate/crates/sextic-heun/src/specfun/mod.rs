//! Special functions: Euler gamma, Kummer/Tricomi confluent hypergeometric
//! functions, and Hermite functions of arbitrary real order.
//!
//! Everything here is a pure function of its arguments; no global state.
//! The Hermite function of real order is evaluated through the two-Kummer
//! representation
//!
//! ```text
//! H_nu(y) = 2^nu sqrt(pi) [ M(-nu/2; 1/2; y^2) / Gamma((1-nu)/2)
//!                           - 2y M((1-nu)/2; 3/2; y^2) / Gamma(-nu/2) ]
//! ```
//!
//! which reduces to the Hermite polynomial for non-negative integer order.
//! The direct series is used throughout the documented envelope
//! (|y| up to ~8, |nu| up to ~30); partial sums are carried with a binary
//! scale factor so intermediate e^{y^2}-sized terms cannot overflow.

mod gamma;
mod hermite;
mod kummer;

pub use gamma::{gamma, rgamma};
pub use hermite::{hermite_nu, hermite_nu_deriv, hermite_nu_scaled, hermite_oscillatory_approx};
pub use kummer::{kummer_m, kummer_m_scaled, tricomi_u};

use thiserror::Error;

/// Errors from special-function evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("gamma pole at non-positive integer x = {x}")]
    Pole { x: f64 },
    #[error("series did not converge within {max_terms} terms")]
    NonConvergence { max_terms: usize },
    #[error("argument outside domain: {reason}")]
    Domain { reason: &'static str },
    #[error("cancellation loss: intermediate magnitude {magnitude:e} vs result {result:e}")]
    PrecisionLoss { magnitude: f64, result: f64 },
    #[error("result overflows f64; use the scaled variant")]
    Overflow,
}

/// Tolerances and cutoffs for series evaluation.
#[derive(Debug, Clone, Copy)]
pub struct EvalPolicy {
    /// Relative tolerance for series termination.
    pub series_tol: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
    /// Argument magnitude above which asymptotic/connection formulas are
    /// preferred over the direct series.
    pub recurrence_switch_threshold: f64,
}

impl EvalPolicy {
    pub fn new(series_tol: f64, max_terms: usize, recurrence_switch_threshold: f64) -> Self {
        assert!(series_tol > 0.0, "series_tol must be positive");
        assert!(max_terms >= 1, "max_terms must be at least 1");
        EvalPolicy {
            series_tol,
            max_terms,
            recurrence_switch_threshold,
        }
    }
}

impl Default for EvalPolicy {
    fn default() -> Self {
        EvalPolicy {
            series_tol: 1e-16,
            max_terms: 800,
            recurrence_switch_threshold: 30.0,
        }
    }
}

pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}
