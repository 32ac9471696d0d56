//! Numerical thresholds shared by every decision the crate makes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute, relative and rank thresholds.
///
/// Absolute thresholds are applied against `scale(A) = max(1, ||A||_2)`, so
/// they act relatively for large matrices and absolutely for small ones.
/// The singular-value rank cutoff is `n * rank_eps * sigma_max`, i.e. the
/// rank factor grows with the dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceContext {
    pub atol: f64,
    pub rtol: f64,
    pub rank_eps: f64,
}

impl Default for ToleranceContext {
    fn default() -> Self {
        Self {
            atol: 1e-10,
            rtol: 1e-8,
            rank_eps: 1e-12,
        }
    }
}

impl ToleranceContext {
    pub fn new(atol: f64, rtol: f64, rank_eps: f64) -> Result<Self> {
        for (name, v) in [("atol", atol), ("rtol", rtol), ("rank_eps", rank_eps)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(Self {
            atol,
            rtol,
            rank_eps,
        })
    }

    /// Multiplier applied to `sigma_max` to obtain the rank cutoff.
    pub fn rank_factor(&self, n: usize) -> f64 {
        n.max(1) as f64 * self.rank_eps
    }

    pub fn rank_cutoff(&self, n: usize, sigma_max: f64) -> f64 {
        self.rank_factor(n) * sigma_max
    }

    /// `atol * scale`
    pub fn abs_bound(&self, scale: f64) -> f64 {
        self.atol * scale
    }

    /// `rtol * scale`
    pub fn rel_bound(&self, scale: f64) -> f64 {
        self.rtol * scale
    }

    /// `sqrt(atol) * scale`, used for eigenvalue matching and round trips.
    pub fn match_radius(&self, scale: f64) -> f64 {
        self.atol.sqrt() * scale
    }
}
