//! Precision and truncation parameters for the evaluators.

use crate::error::{Error, Result};

/// Truncation and accuracy knobs for zeta, theta and Z evaluation.
///
/// The Euler-Maclaurin cutoff grows with the height of the argument:
/// `N = em_terms_base + ceil(em_terms_per_t * |t|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig {
    pub em_terms_base: usize,
    pub em_terms_per_t: f64,
    /// Highest Bernoulli correction order 2k used by the tail (even, <= 30).
    pub bernoulli_order: usize,
    pub target_abs_err: f64,
    /// Evaluations with |Im(s)| beyond this are refused.
    pub max_t: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            em_terms_base: 32,
            em_terms_per_t: 1.0,
            bernoulli_order: 20,
            target_abs_err: 1e-11,
            max_t: 10_000.0,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if self.em_terms_base < 8 {
            return Err(Error::InvalidConfig {
                detail: format!("em_terms_base = {} < 8", self.em_terms_base),
            });
        }
        if !(self.em_terms_per_t >= 0.0) {
            return Err(Error::InvalidConfig {
                detail: format!("em_terms_per_t = {} must be >= 0", self.em_terms_per_t),
            });
        }
        if self.bernoulli_order == 0 || !self.bernoulli_order.is_multiple_of(2) {
            return Err(Error::InvalidConfig {
                detail: format!(
                    "bernoulli_order = {} must be positive even",
                    self.bernoulli_order
                ),
            });
        }
        if self.bernoulli_order > 30 {
            return Err(Error::InvalidConfig {
                detail: format!(
                    "bernoulli_order = {} beyond tabulated Bernoulli numbers (max 30)",
                    self.bernoulli_order
                ),
            });
        }
        if !(self.target_abs_err > 0.0) {
            return Err(Error::InvalidConfig {
                detail: format!("target_abs_err = {} must be > 0", self.target_abs_err),
            });
        }
        if !(self.max_t > 0.0 && self.max_t.is_finite()) {
            return Err(Error::InvalidConfig {
                detail: format!("max_t = {} must be positive finite", self.max_t),
            });
        }
        Ok(())
    }

    /// Euler-Maclaurin direct-sum cutoff for an argument of height |t|.
    pub fn truncation_terms(&self, t_abs: f64) -> usize {
        self.em_terms_base + (self.em_terms_per_t * t_abs).ceil() as usize
    }
}
