use super::{derived_quantities, lambda0, p5_condition, round_schedule, AnalysisError, AnalysisParams, RoundSchedule};
use crate::longest_path::{longest_path_exact, longest_path_length};
use crate::ran::{Ran, VertexPath};

/// One checkpoint of the decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundRow {
    pub i: usize,
    pub sigma: usize,
    /// Path vertices that already exist after `sigma` insertions.
    pub tau: usize,
    /// Prefix faces whose interior the path visits.
    pub visited: usize,
    pub ratio: f64,
    /// End of the following round: the next checkpoint, or `n`.
    pub horizon: usize,
    /// Visited faces receiving at least `Lambda0` insertions by `horizon`.
    pub j: usize,
    /// Members of `J` whose own longest path has length at least
    /// `N_j / omega1(N_j)`.
    pub j1: usize,
    /// Prefix faces (visited or not) with at least `Lambda0` insertions.
    pub heavy_faces: usize,
    /// `omega2 tau / phi0`.
    pub j1_bound: f64,
    /// `tau - 1 <= visited <= tau + 1`.
    pub projection_holds: bool,
    /// `visited <= runs <= min(3 visited + 1, tau + 1)`, with `runs` the maximal
    /// stretches of the path inside prefix faces.
    pub run_bound_holds: bool,
    pub p5: bool,
}

impl RoundRow {
    pub fn j1_within_bound(&self) -> bool {
        self.j1 as f64 <= self.j1_bound
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoundReport {
    pub rows: Vec<RoundRow>,
}

impl RoundReport {
    pub fn projection_violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.projection_holds).count()
    }

    pub fn run_bound_violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.run_bound_holds).count()
    }

    pub fn j1_bound_violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.j1_within_bound()).count()
    }

    pub fn initial_ratio(&self) -> f64 {
        self.rows.first().map_or(f64::NAN, |r| r.ratio)
    }

    pub fn final_ratio(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.ratio)
    }
}

/// Measure `path` against every checkpoint of `schedule`.
pub fn round_decomposition_experiment(
    ran: &Ran,
    path: &VertexPath,
    schedule: &RoundSchedule,
    params: &AnalysisParams,
) -> Result<RoundReport, AnalysisError> {
    let n = ran.n();
    if schedule.sigmas.is_empty() || schedule.sigmas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(AnalysisError::Mismatch("checkpoints must be strictly increasing".into()));
    }
    if *schedule.sigmas.last().unwrap() > n {
        return Err(AnalysisError::Mismatch(format!(
            "last checkpoint {} exceeds n = {n}",
            schedule.sigmas.last().unwrap()
        )));
    }
    path.check_in(ran)?;
    let l0 = lambda0(params)?;
    let d = derived_quantities(params)?;

    let mut rows = Vec::with_capacity(schedule.sigmas.len());
    for (i, &sigma) in schedule.sigmas.iter().enumerate() {
        let horizon = schedule.sigmas.get(i + 1).copied().unwrap_or(n);
        let check = ran.projection_check(sigma, path)?;
        let visited = ran.visited_face_set(sigma, path)?;
        let occupancy = ran.leaf_occupancies(sigma, horizon)?;
        let heavy_faces = occupancy.iter().filter(|&&(_, c)| c as f64 >= l0).count();

        let mut j = 0;
        let mut j1 = 0;
        for &(face, count) in &occupancy {
            if (count as f64) < l0 || visited.binary_search(&face).is_err() {
                continue;
            }
            j += 1;
            let sub = ran.subinstance(face, horizon)?;
            let len = longest_path_length(&sub) as f64;
            if len >= count as f64 / params.omega1(count as f64)? {
                j1 += 1;
            }
        }

        rows.push(RoundRow {
            i,
            sigma,
            tau: check.tau,
            visited: check.tau_prime,
            ratio: check.tau as f64 / sigma as f64,
            horizon,
            j,
            j1,
            heavy_faces,
            j1_bound: d.omega2 * check.tau as f64 / d.phi0,
            projection_holds: check.holds(),
            run_bound_holds: check.run_bound_holds(),
            p5: p5_condition(params, sigma, check.tau)?,
        });
    }
    Ok(RoundReport { rows })
}

/// Generate the instance for `seed` at size `params.n`, find its exact
/// longest path, and run the experiment on the default schedule.
pub fn run_rounds(params: &AnalysisParams, seed: u64) -> Result<RoundReport, AnalysisError> {
    let ran = Ran::generate(params.n as usize, seed);
    let path = longest_path_exact(&ran).path;
    let schedule = round_schedule(params)?;
    round_decomposition_experiment(&ran, &path, &schedule, params)
}
