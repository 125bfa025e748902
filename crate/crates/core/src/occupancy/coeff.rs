//! Coefficients of the death-count law of a `k`-ary branching process,
//! `A(k, N, s) = prod_{i=1..N} ((k-1)(i-1) + s) / ((k-1) i)`.
//!
//! For `k = 3` these are `C(N + s/2 - 1, s/2 - 1)` when `s` is even and
//! `(s-1+2N)! ((s-1)/2)! / (4^N (s-1)! N! ((s-1)/2+N)!)` when `s` is odd.

use super::OccupancyError;
use libm::lgamma;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

/// Largest `N` accepted by the exact rational routines.
pub const EXACT_MAX_N: u64 = 30;

fn ln_factorial(x: u64) -> f64 {
    lgamma(x as f64 + 1.0)
}

/// `ln A(3, N, s)` by the parity-specific closed forms.
pub fn log_coeff_a(deaths: u64, s: u64) -> Result<f64, OccupancyError> {
    if s == 0 {
        return Err(OccupancyError::Domain("initial particle count s must be at least 1".into()));
    }
    Ok(log_coeff_a3(deaths, s))
}

/// As [`log_coeff_a`] but with `A(3, 0, 0) = 1` and `A(3, N > 0, 0) = 0`.
pub(crate) fn log_coeff_a3(deaths: u64, s: u64) -> f64 {
    if deaths == 0 {
        return 0.0;
    }
    if s == 0 {
        return f64::NEG_INFINITY;
    }
    if s.is_multiple_of(2) {
        let h = s / 2;
        // ln C(N + h - 1, h - 1)
        ln_factorial(deaths + h - 1) - ln_factorial(deaths) - ln_factorial(h - 1)
    } else {
        let g = (s - 1) / 2;
        ln_factorial(s - 1 + 2 * deaths) + ln_factorial(g)
            - 2.0 * deaths as f64 * std::f64::consts::LN_2
            - ln_factorial(s - 1)
            - ln_factorial(deaths)
            - ln_factorial(g + deaths)
    }
}

/// `ln A(k, N, s)` for any offspring count `k >= 2`, via
/// `Gamma(N + r) / (Gamma(r) N!)` with `r = s / (k - 1)`.
pub fn log_coeff_general(k: u64, deaths: u64, s: u64) -> Result<f64, OccupancyError> {
    if k < 2 {
        return Err(OccupancyError::Domain(format!("offspring count k = {k} must be at least 2")));
    }
    if s == 0 {
        return Err(OccupancyError::Domain("initial particle count s must be at least 1".into()));
    }
    let r = s as f64 / (k - 1) as f64;
    Ok(lgamma(deaths as f64 + r) - lgamma(r) - ln_factorial(deaths))
}

/// `A(3, N, s)` as an exact rational (`s = 0` allowed, see
/// [`log_coeff_a3`]). For even `s` the value is checked against `s^N`.
pub fn coeff_a_exact(deaths: u64, s: u64) -> Result<BigRational, OccupancyError> {
    if deaths > EXACT_MAX_N {
        return Err(OccupancyError::ExactTooLarge {
            n: deaths,
            limit: EXACT_MAX_N,
        });
    }
    let mut value = BigRational::one();
    for i in 1..=deaths {
        value *= BigRational::new(BigInt::from(2 * i - 2 + s), BigInt::from(2 * i));
    }
    if s.is_multiple_of(2) && s > 0 {
        let cap = BigRational::from_integer(BigInt::from(s)).pow(deaths as u32);
        assert!(value <= cap, "A(3,{deaths},{s}) exceeds s^N");
    }
    debug_assert!(s > 0 || deaths == 0 || value.is_zero());
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn zero_deaths_is_one() {
        for s in 1..40 {
            assert_eq!(log_coeff_a(0, s).unwrap(), 0.0);
            assert_eq!(coeff_a_exact(0, s).unwrap(), BigRational::one());
        }
    }

    #[test]
    fn s_two_is_one_for_all_n() {
        for n in 0..200 {
            assert!(close(log_coeff_a(n, 2).unwrap(), 0.0));
        }
        assert_eq!(coeff_a_exact(25, 2).unwrap(), BigRational::one());
    }

    #[test]
    fn binomial_value() {
        // C(3, 1) = 3
        assert!(close(log_coeff_a(2, 4).unwrap(), 3f64.ln()));
        assert_eq!(coeff_a_exact(2, 4).unwrap(), BigRational::from_integer(3.into()));
    }

    #[test]
    fn odd_closed_form_matches_product() {
        for s in [1u64, 3, 5, 21, 201] {
            for n in [1u64, 2, 7, 30] {
                let product: f64 = (1..=n).map(|i| ((2 * i - 2 + s) as f64 / (2 * i) as f64).ln()).sum();
                assert!(close(log_coeff_a(n, s).unwrap(), product), "s={s} n={n}");
                let general = log_coeff_general(3, n, s).unwrap();
                assert!(close(general, product), "s={s} n={n}");
            }
        }
        // A(3,1,1) = 1/2
        assert_eq!(
            coeff_a_exact(1, 1).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
    }

    #[test]
    fn general_k_product() {
        let k = 4;
        let (n, s) = (6u64, 5u64);
        let product: f64 = (1..=n)
            .map(|i| (((k - 1) * (i - 1) + s) as f64 / ((k - 1) * i) as f64).ln())
            .sum();
        assert!(close(log_coeff_general(k, n, s).unwrap(), product));
        assert!(log_coeff_general(1, 2, 2).is_err());
    }

    #[test]
    fn domain_and_guard() {
        assert!(log_coeff_a(3, 0).is_err());
        assert!(matches!(coeff_a_exact(31, 3), Err(OccupancyError::ExactTooLarge { .. })));
        assert!(coeff_a_exact(4, 0).unwrap().is_zero());
    }
}
