//! Upper tail of the total occupancy of any `tau` faces.

use super::OccupancyError;
use crate::ran::Ran;
use crate::rng::{self, SimRng};
use rayon::prelude::*;

/// Largest `sigma + N` a tail check will simulate.
pub const TAIL_CAPACITY: u64 = 100_000_000;

/// `100 tau N / sigma * ln(sigma / tau)`.
pub fn lemma_p2_threshold(tau: u64, sigma: u64, insertions: u64) -> Result<f64, OccupancyError> {
    if tau == 0 || tau >= sigma {
        return Err(OccupancyError::Domain(format!(
            "threshold needs 0 < tau < sigma, got tau = {tau}, sigma = {sigma}"
        )));
    }
    let (t, s) = (tau as f64, sigma as f64);
    Ok(100.0 * t * insertions as f64 / s * (s / t).ln())
}

#[derive(Clone, Debug, PartialEq)]
pub struct TailCheck {
    pub trials: u64,
    pub violations: u64,
    /// `None` when `tau >= sigma` (the logarithm is not positive).
    pub threshold: Option<f64>,
    /// Largest top-`tau` sum seen across trials.
    pub max_sum: u64,
    pub mean_sum: f64,
    /// `tau < ln^2(sigma + N)`: outside the regime the bound is stated for.
    pub tau_below_lambda1: bool,
}

/// Continue the `sigma`-prefix of `ran` by `N` uniform insertions, `trials`
/// times, and count runs where the `tau` most-occupied faces together
/// received more than the threshold.
pub fn check_lemma_p2(
    ran: &Ran,
    sigma: usize,
    tau: u64,
    insertions: u64,
    trials: u64,
    seed: u64,
) -> Result<TailCheck, OccupancyError> {
    let prefix_faces = ran.prefix(sigma)?.leaves();
    let faces = prefix_faces.len() as u64;
    if tau == 0 || tau > faces {
        return Err(OccupancyError::Domain(format!(
            "tau = {tau} must lie in 1..={faces}"
        )));
    }
    let requested = sigma as u64 + insertions;
    if requested > TAIL_CAPACITY {
        return Err(OccupancyError::Capacity {
            requested,
            capacity: TAIL_CAPACITY,
        });
    }
    let threshold = lemma_p2_threshold(tau, sigma as u64, insertions).ok();
    let lambda1 = (requested.max(2) as f64).ln().powi(2);

    let sums: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = rng::stream_rng(seed, trial + 1);
            top_sum(faces as usize, tau as usize, insertions, &mut rng)
        })
        .collect();
    let violations = match threshold {
        Some(limit) => sums.iter().filter(|&&s| s as f64 > limit).count() as u64,
        None => 0,
    };
    Ok(TailCheck {
        trials,
        violations,
        threshold,
        max_sum: sums.iter().copied().max().unwrap_or(0),
        mean_sum: if trials == 0 {
            0.0
        } else {
            sums.iter().sum::<u64>() as f64 / trials as f64
        },
        tau_below_lambda1: (tau as f64) < lambda1,
    })
}

/// Run the insertions leaf by leaf and sum the `tau` largest face loads.
fn top_sum(faces: usize, tau: usize, insertions: u64, rng: &mut SimRng) -> u64 {
    // owner[leaf] = index of the prefix face containing that leaf; a hit
    // replaces one leaf by three with the same owner.
    let mut owner: Vec<u32> = (0..faces as u32).collect();
    owner.reserve(2 * insertions as usize);
    let mut load = vec![0u64; faces];
    for _ in 0..insertions {
        let g = owner[rng::uniform_index(rng, owner.len())];
        owner.push(g);
        owner.push(g);
        load[g as usize] += 1;
    }
    if tau < faces {
        load.select_nth_unstable_by(tau - 1, |a, b| b.cmp(a));
    }
    load[..tau].iter().sum()
}
