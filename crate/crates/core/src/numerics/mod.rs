//! Double-precision evaluation with explicit error bounds.

mod accum;
mod asymptotic;
mod bernoulli;
mod brute;
mod integral;
mod mzv;
mod polylog;
mod quadrature;
mod zeta;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use accum::CompensatedSum;
pub use bernoulli::bernoulli;
pub use brute::brute_tail_product_sum;
pub use integral::mzv_integral;
pub use mzv::{mzv, MAX_DEPTH};
pub use polylog::polylog;
pub use zeta::{tail, zeta};

/// Default target for depth <= 2 evaluations.
pub const DEFAULT_EPS: f64 = 1e-9;
/// Default target for depth 3 and 4.
pub const DEFAULT_DEEP_EPS: f64 = 1e-7;

/// Arguments closer than this to a divergence boundary are rejected.
pub const BOUNDARY_GUARD: f64 = 1e-6;

pub(crate) const MAX_TERMS: usize = 1 << 24;

/// A computed value with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub value: f64,
    pub abs_error_bound: f64,
    pub terms_used: usize,
}

impl EvalReport {
    pub fn new(value: f64, abs_error_bound: f64, terms_used: usize) -> Self {
        debug_assert!(abs_error_bound >= 0.0 && abs_error_bound.is_finite());
        EvalReport { value, abs_error_bound, terms_used: terms_used.max(1) }
    }

    /// Whether `other` lies within the two bounds plus `slack`.
    pub fn agrees_with(&self, other: &EvalReport, slack: f64) -> bool {
        (self.value - other.value).abs() <= self.abs_error_bound + other.abs_error_bound + slack
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("target accuracy must be positive, got {eps}")))
    }
}
