//! Analytic quantities of the round decomposition, the checkpoint schedule,
//! length bounds, and the experiment that measures a path against them.
//!
//! All logarithms are natural.

mod bounds;
mod experiment;
mod functions;
mod schedule;

pub use bounds::{always_bound, p5_condition, partition_lambda, thm1_beats_thm2_from, theorem_bounds, TheoremBounds};
pub use experiment::{round_decomposition_experiment, run_rounds, RoundReport, RoundRow};
pub use functions::{derived_quantities, lambda, lambda0, ln_lambda0, omega1, phi, DerivedQuantities, LAMBDA_MAX_EXPONENT};
pub use schedule::{round_schedule, RoundSchedule};

use crate::ran::RanError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("e^(x^2) overflows for x^2 = {exponent} > {}", LAMBDA_MAX_EXPONENT)]
    Overflow { exponent: f64 },
    #[error("schedule does not fit the instance: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Ran(#[from] RanError),
}

/// Which statement the parameters are tuned for. `Thm2` replaces the
/// exponent `alpha / 2` of `omega1` with `1/3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Profile {
    #[default]
    Thm1,
    Thm2,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisParams {
    pub alpha: f64,
    pub c: f64,
    pub n: u64,
    pub profile: Profile,
}

pub const DEFAULT_ALPHA: f64 = 0.3;
pub const DEFAULT_C: f64 = 0.6;

impl AnalysisParams {
    pub fn new(alpha: f64, c: f64, n: u64) -> Result<Self, AnalysisError> {
        if !(alpha > 0.0 && alpha < 1.0 / 3.0) {
            return Err(AnalysisError::Domain(format!("alpha = {alpha} must lie in (0, 1/3)")));
        }
        if !(c > 0.0 && c < 2.0 / 3.0) {
            return Err(AnalysisError::Domain(format!("c = {c} must lie in (0, 2/3)")));
        }
        if n < 27 {
            return Err(AnalysisError::Domain(format!("n = {n} must be at least 27")));
        }
        Ok(AnalysisParams {
            alpha,
            c,
            n,
            profile: Profile::Thm1,
        })
    }

    pub fn with_defaults(n: u64) -> Result<Self, AnalysisError> {
        Self::new(DEFAULT_ALPHA, DEFAULT_C, n)
    }

    pub fn with_profile(self, profile: Profile) -> Self {
        AnalysisParams { profile, ..self }
    }

    /// Exponent `e` in `omega1(x) = (ln x)^e`.
    pub fn omega_exponent(&self) -> f64 {
        match self.profile {
            Profile::Thm1 => self.alpha / 2.0,
            Profile::Thm2 => 1.0 / 3.0,
        }
    }

    /// `omega1` as configured by these parameters.
    pub fn omega1(&self, x: f64) -> Result<f64, AnalysisError> {
        omega1(x, 2.0 * self.omega_exponent())
    }

    pub(crate) fn ln_n(&self) -> f64 {
        (self.n as f64).ln()
    }
}
