use super::{derived_quantities, AnalysisError, AnalysisParams};
use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoremBounds {
    /// `n / (ln n)^alpha`.
    pub thm1: f64,
    /// `n e^{-(ln n)^c}`.
    pub thm2: f64,
    /// `ln n + 100 ln n e^{-omega0 / ln omega0} n`.
    pub lemma_p4: f64,
    /// `n^{log_3 2} + 2`, which holds for every instance.
    pub always: f64,
}

pub fn theorem_bounds(params: &AnalysisParams) -> Result<TheoremBounds, AnalysisError> {
    let n = params.n as f64;
    let ln_n = n.ln();
    let d = derived_quantities(params)?;
    let ln_tail = (100.0 * ln_n).ln() + ln_n - d.omega0 / d.omega0.ln();
    Ok(TheoremBounds {
        thm1: n / ln_n.powf(params.alpha),
        thm2: n * (-ln_n.powf(params.c)).exp(),
        lemma_p4: ln_n + ln_tail.exp(),
        always: always_bound(params.n),
    })
}

/// `n^{log_3 2} + 2`.
pub fn always_bound(n: u64) -> f64 {
    (n as f64).powf(2f64.ln() / 3f64.ln()) + 2.0
}

/// Smallest `n0 >= 27` with the first bound above the second for every
/// `n0 <= n <= limit`, or `None` if it fails at `limit`.
pub fn thm1_beats_thm2_from(alpha: f64, c: f64, limit: u64) -> Option<u64> {
    // n / (ln n)^alpha > n e^{-(ln n)^c}  <=>  (ln n)^c > alpha ln ln n
    let holds = |n: u64| {
        let l = (n as f64).ln();
        l.powf(c) > alpha * l.ln()
    };
    let mut n0 = None;
    for n in (27..=limit).rev() {
        if !holds(n) {
            break;
        }
        n0 = Some(n);
    }
    n0
}

/// `alpha/2 ln ln n <= ln(sigma / tau) <= omega0 / ln omega0`.
pub fn p5_condition(params: &AnalysisParams, sigma: usize, tau: usize) -> Result<bool, AnalysisError> {
    if tau == 0 {
        return Ok(false);
    }
    let d = derived_quantities(params)?;
    let ln_n = params.ln_n();
    let x = (sigma as f64 / tau as f64).ln();
    Ok(params.alpha / 2.0 * ln_n.ln() <= x && x <= d.omega0 / d.omega0.ln())
}

/// Split `1..=floor(lambda)` into `max(1, round(q))` consecutive blocks whose
/// sizes differ by at most one.
pub fn partition_lambda(params: &AnalysisParams) -> Result<Vec<Range<u64>>, AnalysisError> {
    let d = derived_quantities(params)?;
    let total = d.lambda.floor() as u64;
    let blocks = (d.q.round() as u64).clamp(1, total.max(1));
    let (base, extra) = (total / blocks, total % blocks);
    let mut start = 1;
    Ok((0..blocks)
        .map(|b| {
            let len = base + u64::from(b < extra);
            let r = start..start + len;
            start += len;
            r
        })
        .collect())
}
