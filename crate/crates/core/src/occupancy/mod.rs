//! How `N` further insertions spread over a fixed set of faces.
//!
//! Every insertion turns one leaf into three, so a group of faces that
//! currently holds `w` leaves is hit with probability proportional to `w`,
//! and `w` grows by 2 per hit: a Pólya urn with reinforcement 2. The number
//! `m` of insertions landing in `tau` marked faces out of `F` is therefore
//! Dirichlet-multinomial with parameters `tau/2` and `(F - tau)/2`, which is
//! the same as the ratio of branching-process coefficients
//! `A(3, m, tau) A(3, N - m, F - tau) / A(3, N, F)`.

mod branching;
mod coeff;
mod tail;

pub use branching::{death_count_pmf, death_count_total, simulate_deaths, BranchingParams};
pub use coeff::{coeff_a_exact, log_coeff_a, log_coeff_general, EXACT_MAX_N};
pub use tail::{check_lemma_p2, lemma_p2_threshold, TailCheck, TAIL_CAPACITY};

use crate::rng::{self, SimRng};
use coeff::log_coeff_a3;
use libm::lgamma;
use num_rational::BigRational;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OccupancyError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("m = {m} is outside 0..={n}")]
    OutOfRange { m: u64, n: u64 },
    #[error("exact arithmetic is limited to N <= {limit}, got {n}")]
    ExactTooLarge { n: u64, limit: u64 },
    #[error("sigma + N = {requested} exceeds the capacity {capacity}")]
    Capacity { requested: u64, capacity: u64 },
    #[error(transparent)]
    Ran(#[from] crate::ran::RanError),
}

/// `faces` leaves, `marked` of them marked, `insertions` further steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OccupancyLaw {
    faces: u64,
    marked: u64,
    insertions: u64,
}

impl OccupancyLaw {
    pub fn new(faces: u64, marked: u64, insertions: u64) -> Result<Self, OccupancyError> {
        if marked == 0 || marked > faces {
            return Err(OccupancyError::Domain(format!(
                "need 1 <= marked <= faces, got marked = {marked}, faces = {faces}"
            )));
        }
        Ok(OccupancyLaw {
            faces,
            marked,
            insertions,
        })
    }

    /// Law for `tau` of the `2 sigma + 1` faces after `sigma` insertions.
    pub fn after_insertions(sigma: u64, tau: u64, insertions: u64) -> Result<Self, OccupancyError> {
        Self::new(2 * sigma + 1, tau, insertions)
    }

    pub fn faces(&self) -> u64 {
        self.faces
    }

    pub fn marked(&self) -> u64 {
        self.marked
    }

    pub fn insertions(&self) -> u64 {
        self.insertions
    }

    fn check_m(&self, m: u64) -> Result<(), OccupancyError> {
        if m > self.insertions {
            return Err(OccupancyError::OutOfRange {
                m,
                n: self.insertions,
            });
        }
        Ok(())
    }

    /// `ln Pr(m)` from the branching coefficients.
    pub fn log_pmf(&self, m: u64) -> Result<f64, OccupancyError> {
        self.check_m(m)?;
        let n = self.insertions;
        Ok(log_coeff_a3(m, self.marked) + log_coeff_a3(n - m, self.faces - self.marked)
            - log_coeff_a3(n, self.faces))
    }

    /// `Pr(m)` from the branching coefficients.
    pub fn pmf(&self, m: u64) -> Result<f64, OccupancyError> {
        Ok(self.log_pmf(m)?.exp())
    }

    /// `ln Pr(m)` from the Dirichlet-multinomial form, independent of the
    /// coefficient formulas.
    pub fn log_pmf_dirichlet(&self, m: u64) -> Result<f64, OccupancyError> {
        self.check_m(m)?;
        let n = self.insertions;
        let a = self.marked as f64 / 2.0;
        let b = (self.faces - self.marked) as f64 / 2.0;
        let rising = |x: f64, k: u64| if k == 0 { 0.0 } else { lgamma(x + k as f64) - lgamma(x) };
        if b == 0.0 {
            return Ok(if m == n { 0.0 } else { f64::NEG_INFINITY });
        }
        let ln_choose = lgamma(n as f64 + 1.0) - lgamma(m as f64 + 1.0) - lgamma((n - m) as f64 + 1.0);
        Ok(ln_choose + rising(a, m) + rising(b, n - m) - rising(a + b, n))
    }

    pub fn pmf_dirichlet(&self, m: u64) -> Result<f64, OccupancyError> {
        Ok(self.log_pmf_dirichlet(m)?.exp())
    }

    /// Exact `Pr(m)` for `N <= EXACT_MAX_N`.
    pub fn pmf_exact(&self, m: u64) -> Result<BigRational, OccupancyError> {
        self.check_m(m)?;
        let n = self.insertions;
        Ok(coeff_a_exact(m, self.marked)? * coeff_a_exact(n - m, self.faces - self.marked)?
            / coeff_a_exact(n, self.faces)?)
    }

    /// `Pr(m)` for every `m` in `0..=N`, by the term ratio
    /// `Pr(m+1)/Pr(m) = (N-m)(a+m) / ((m+1)(b+N-m-1))` in log space. This
    /// avoids the cancellation between large log-gamma values that limits
    /// [`Self::pmf`] for big `N`.
    pub fn pmf_table(&self) -> Vec<f64> {
        let n = self.insertions;
        let a = self.marked as f64 / 2.0;
        let b = (self.faces - self.marked) as f64 / 2.0;
        if b == 0.0 {
            let mut table = vec![0.0; n as usize + 1];
            table[n as usize] = 1.0;
            return table;
        }
        // ln Pr(0) = sum_i ln((b + i) / (a + b + i))
        let mut ln_p: f64 = (0..n).map(|i| (-a / (a + b + i as f64)).ln_1p()).sum();
        let mut table = Vec::with_capacity(n as usize + 1);
        table.push(ln_p.exp());
        for m in 0..n {
            let (mf, nf) = (m as f64, n as f64);
            ln_p += ((nf - mf) / (mf + 1.0)).ln() + ((a + mf) / (b + nf - mf - 1.0)).ln();
            table.push(ln_p.exp());
        }
        table
    }

    /// One run of the urn: `N` picks, each landing in the marked group with
    /// probability (marked leaves) / (all leaves).
    pub fn sample_with(&self, rng: &mut SimRng) -> u64 {
        let mut marked = self.marked;
        let mut total = self.faces;
        let mut hits = 0;
        for _ in 0..self.insertions {
            if rng.random_range(0..total) < marked {
                marked += 2;
                hits += 1;
            }
            total += 2;
        }
        hits
    }
}

/// `Pr(M_1 + ... + M_tau = m)`.
pub fn occupancy_pmf(law: &OccupancyLaw, m: u64) -> Result<f64, OccupancyError> {
    law.pmf(m)
}

/// One sample of the marked-group occupancy from stream 0 of `seed`.
pub fn sample_occupancy(law: &OccupancyLaw, seed: u64) -> u64 {
    law.sample_with(&mut rng::stream_rng(seed, 0))
}

/// Total-variation distance between an empirical histogram over `0..=N` and
/// a pmf.
pub fn total_variation(counts: &[u64], pmf: &[f64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let len = counts.len().max(pmf.len());
    0.5 * (0..len)
        .map(|m| {
            let emp = counts.get(m).copied().unwrap_or(0) as f64 / total as f64;
            (emp - pmf.get(m).copied().unwrap_or(0.0)).abs()
        })
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn all_marked_is_certain() {
        let law = OccupancyLaw::new(7, 7, 5).unwrap();
        assert_eq!(law.pmf(5).unwrap(), 1.0);
        assert_eq!(law.pmf(4).unwrap(), 0.0);
        assert_eq!(law.pmf_exact(5).unwrap(), BigRational::one());
        assert_eq!(law.pmf_dirichlet(5).unwrap(), 1.0);
        for seed in 0..20 {
            assert_eq!(sample_occupancy(&law, seed), 5);
        }
    }

    #[test]
    fn first_pick_is_uniform() {
        let law = OccupancyLaw::new(3, 1, 1).unwrap();
        assert!((law.pmf(1).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(law.pmf_exact(1).unwrap(), ratio(1, 3));
    }

    #[test]
    fn two_picks_both_marked() {
        // (1/3) * (3/5)
        let law = OccupancyLaw::new(3, 1, 2).unwrap();
        assert_eq!(law.pmf_exact(2).unwrap(), ratio(1, 5));
        assert!((law.pmf(2).unwrap() - 0.2).abs() < 1e-15);
        assert!((law.pmf_dirichlet(2).unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(OccupancyLaw::new(3, 0, 1).is_err());
        assert!(OccupancyLaw::new(3, 4, 1).is_err());
        let law = OccupancyLaw::new(3, 1, 2).unwrap();
        assert_eq!(law.pmf(3), Err(OccupancyError::OutOfRange { m: 3, n: 2 }));
        let big = OccupancyLaw::new(3, 1, 31).unwrap();
        assert!(matches!(big.pmf_exact(0), Err(OccupancyError::ExactTooLarge { .. })));
    }

    #[test]
    fn survives_large_n() {
        let law = OccupancyLaw::new(2_000_001, 1001, 1_000_000).unwrap();
        let table = law.pmf_table();
        let sum: f64 = table.iter().sum();
        assert!((sum - 1.0).abs() < 1e-9, "{sum}");
    }

    #[test]
    fn single_pick_frequency() {
        let law = OccupancyLaw::new(3, 1, 1).unwrap();
        let mut rng = rng::stream_rng(5, 0);
        let runs = 100_000;
        let hits: u64 = (0..runs).map(|_| law.sample_with(&mut rng)).sum();
        let p = 1.0 / 3.0;
        let sd = (runs as f64 * p * (1.0 - p)).sqrt();
        assert!((hits as f64 - runs as f64 * p).abs() < 3.0 * sd, "{hits}");
    }
}
