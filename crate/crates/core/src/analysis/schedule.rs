use super::{lambda0, AnalysisError, AnalysisParams};

#[derive(Clone, Debug, PartialEq)]
pub struct RoundSchedule {
    /// `sigma_0 < sigma_1 < ... < sigma_m <= n`.
    pub sigmas: Vec<usize>,
    pub lambda0: f64,
    /// `ln n / omega1(n)^2`, the predicted order of `m - 1`.
    pub predicted_rounds: f64,
    /// `floor(ln(n^(1/2)) / ln(1 + 3 Lambda0))`, the count a pure geometric
    /// recursion would give.
    pub geometric_estimate: u64,
}

impl RoundSchedule {
    /// Index of the last checkpoint.
    pub fn m(&self) -> usize {
        self.sigmas.len() - 1
    }
}

/// `sigma_0 = ceil(sqrt n)`, `sigma_{i+1} = sigma_i + ceil(3 sigma_i Lambda0)`,
/// stopping before `n` is exceeded.
pub fn round_schedule(params: &AnalysisParams) -> Result<RoundSchedule, AnalysisError> {
    let l0 = lambda0(params)?;
    let n = params.n as usize;
    let mut sigma = (params.n as f64).sqrt().ceil() as usize;
    while sigma * sigma < n {
        sigma += 1;
    }
    while sigma > 1 && (sigma - 1) * (sigma - 1) >= n {
        sigma -= 1;
    }
    let mut sigmas = vec![sigma];
    loop {
        let next = sigma as f64 + (3.0 * sigma as f64 * l0).ceil();
        if next > n as f64 {
            break;
        }
        sigma = next as usize;
        sigmas.push(sigma);
    }
    let ln_n = params.ln_n();
    let w = params.omega1(params.n as f64)?;
    Ok(RoundSchedule {
        sigmas,
        lambda0: l0,
        predicted_rounds: ln_n / (w * w),
        geometric_estimate: ((0.5 * ln_n) / (1.0 + 3.0 * l0).ln()).floor() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Profile;

    #[test]
    fn one_million() {
        let p = AnalysisParams::new(0.3, 0.6, 1_000_000).unwrap();
        let s = round_schedule(&p).unwrap();
        assert_eq!(s.sigmas, vec![1000, 28_033, 785_828]);
        assert_eq!(s.m(), 2);
        assert_eq!(s.geometric_estimate, 2);
        assert!((s.predicted_rounds - 6.284_299_249_570_147).abs() < 1e-9);
    }

    #[test]
    fn ceiling_of_root() {
        for n in [27u64, 100, 101, 1000, 65_536, 99_999] {
            let p = AnalysisParams::with_defaults(n).unwrap();
            let s0 = round_schedule(&p).unwrap().sigmas[0] as u64;
            assert!(s0 * s0 >= n && (s0 - 1) * (s0 - 1) < n, "n={n}");
        }
    }

    #[test]
    fn ratios_within_ceiling_slack() {
        for n in [27u64, 500, 10_000, 1_000_000, 1_000_000_000] {
            for profile in [Profile::Thm1, Profile::Thm2] {
                let p = AnalysisParams::with_defaults(n).unwrap().with_profile(profile);
                let s = round_schedule(&p).unwrap();
                let g = 3.0 * s.lambda0;
                assert!(*s.sigmas.last().unwrap() as u64 <= n);
                for w in s.sigmas.windows(2) {
                    let (a, b) = (w[0] as f64, w[1] as f64);
                    assert!(b > a);
                    let r = b / a;
                    assert!(r >= 1.0 + g * (1.0 - 1.0 / a) && r <= 1.0 + g + 1.0 / a, "n={n}");
                }
            }
        }
    }
}
