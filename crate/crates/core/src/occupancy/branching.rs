//! Branching process with mean-one exponential lifetimes: each particle
//! dies and is replaced by `k` newborns. With `s` initial particles the
//! population after `N` deaths is `s + N (k - 1)`, and the number of deaths
//! by time `t` has
//! `p_N(t) = A(k, N, s) e^{-s t} (1 - e^{-(k-1) t})^N`.

use super::{log_coeff_general, OccupancyError};
use crate::rng::SimRng;
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchingParams {
    pub k: u64,
    pub s: u64,
    pub deaths: u64,
    pub t: f64,
}

impl BranchingParams {
    pub fn new(k: u64, s: u64, deaths: u64, t: f64) -> Result<Self, OccupancyError> {
        if k < 2 || s < 1 || !(t >= 0.0) || !t.is_finite() {
            return Err(OccupancyError::Domain(format!(
                "need k >= 2, s >= 1, finite t >= 0; got k = {k}, s = {s}, t = {t}"
            )));
        }
        Ok(BranchingParams { k, s, deaths, t })
    }

    /// Particles alive after `deaths` deaths.
    pub fn population(&self) -> u64 {
        self.s + self.deaths * (self.k - 1)
    }
}

/// `Pr(Z_t = N)`.
pub fn death_count_pmf(p: &BranchingParams) -> f64 {
    if p.deaths == 0 {
        return (-(p.s as f64) * p.t).exp();
    }
    if p.t == 0.0 {
        return 0.0;
    }
    let ln_a = log_coeff_general(p.k, p.deaths, p.s).expect("validated params");
    let survive = (-((p.k - 1) as f64) * p.t).exp();
    (ln_a - p.s as f64 * p.t + p.deaths as f64 * (-survive).ln_1p()).exp()
}

/// `sum_N p_N(t)`, truncated once past the mean and the terms fall below
/// `1e-18` of the running sum. Returns the sum and the number of terms.
pub fn death_count_total(k: u64, s: u64, t: f64) -> Result<(f64, u64), OccupancyError> {
    let base = BranchingParams::new(k, s, 0, t)?;
    // Negative binomial with r = s/(k-1), success probability e^{-(k-1)t}.
    let r = s as f64 / (k - 1) as f64;
    let q = (-((k - 1) as f64) * t).exp();
    let mean = r * (1.0 - q) / q;
    let mut sum = 0.0;
    let mut n = 0u64;
    loop {
        let term = death_count_pmf(&BranchingParams { deaths: n, ..base });
        sum += term;
        n += 1;
        if n as f64 > mean && term < 1e-18 * sum {
            break;
        }
    }
    Ok((sum, n))
}

/// Number of deaths by time `t` in one simulated run.
pub fn simulate_deaths(k: u64, s: u64, t: f64, rng: &mut SimRng) -> u64 {
    let mut alive = s;
    let mut clock = 0.0;
    let mut deaths = 0;
    loop {
        // The minimum of `alive` unit-rate clocks.
        let u: f64 = rng.random();
        clock += -(1.0 - u).ln() / alive as f64;
        if clock > t {
            return deaths;
        }
        deaths += 1;
        alive += k - 1;
    }
}
