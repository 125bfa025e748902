use super::{AnalysisError, AnalysisParams};

/// Largest `x^2` for which `lambda(x)` is evaluated directly.
pub const LAMBDA_MAX_EXPONENT: f64 = 700.0;

/// `(ln x)^(alpha / 2)` for `x > 1`.
pub fn omega1(x: f64, alpha: f64) -> Result<f64, AnalysisError> {
    if !(x > 1.0) || !alpha.is_finite() {
        return Err(AnalysisError::Domain(format!("omega1 needs x > 1, got x = {x}")));
    }
    Ok(x.ln().powf(alpha / 2.0))
}

/// `e^(x^2)`.
pub fn lambda(x: f64) -> Result<f64, AnalysisError> {
    let exponent = x * x;
    if !(exponent <= LAMBDA_MAX_EXPONENT) {
        return Err(AnalysisError::Overflow { exponent });
    }
    Ok(exponent.exp())
}

/// `ln Lambda0 = omega1(n)^2`.
pub fn ln_lambda0(params: &AnalysisParams) -> f64 {
    params.ln_n().powf(2.0 * params.omega_exponent())
}

/// `Lambda0 = lambda(omega1(n))`.
pub fn lambda0(params: &AnalysisParams) -> Result<f64, AnalysisError> {
    lambda(params.omega1(params.n as f64)?)
}

/// `exp(ln x / (y ln ln x))` for `x > e`, `y > 0`.
pub fn phi(x: f64, y: f64) -> Result<f64, AnalysisError> {
    if !(x > std::f64::consts::E) || !(y > 0.0) {
        return Err(AnalysisError::Domain(format!("phi needs x > e and y > 0, got x = {x}, y = {y}")));
    }
    Ok(phi_ln(x.ln(), y))
}

/// `phi` with `ln x` given, for arguments too large to hold directly.
fn phi_ln(ln_x: f64, y: f64) -> f64 {
    (ln_x / (y * ln_x.ln())).exp()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedQuantities {
    pub lambda0: f64,
    pub omega0: f64,
    pub phi0: f64,
    pub omega2: f64,
    pub m_max: f64,
    pub lambda1: f64,
    pub lambda: f64,
    pub q: f64,
    /// `phi(Lambda0, omega0) / phi0`; the two agree only asymptotically.
    pub phi0_ratio: f64,
}

pub fn derived_quantities(params: &AnalysisParams) -> Result<DerivedQuantities, AnalysisError> {
    let ln_l0 = ln_lambda0(params);
    let lambda0 = lambda0(params)?;
    // omega0 = omega1(Lambda0) = (ln Lambda0)^e
    let omega0 = ln_l0.powf(params.omega_exponent());
    if !(omega0 > 1.0) || !(ln_l0 > 1.0) {
        return Err(AnalysisError::Domain(format!(
            "n = {} is too small: omega0 = {omega0}, ln Lambda0 = {ln_l0}",
            params.n
        )));
    }
    let phi0 = (omega0 / (2.0 * omega0.ln())).exp();
    if !phi0.is_finite() {
        return Err(AnalysisError::Domain(format!(
            "phi0 = exp(omega0 / (2 ln omega0)) overflows at omega0 = {omega0}"
        )));
    }
    let ln_n = params.ln_n();
    Ok(DerivedQuantities {
        lambda0,
        omega0,
        phi0,
        omega2: phi0 / omega0,
        m_max: 200.0 * params.n as f64 * ln_n.ln() / ln_n,
        lambda1: ln_n * ln_n,
        lambda: ln_n * ln_n * ln_n,
        q: ln_n,
        phi0_ratio: phi_ln(ln_l0, omega0) / phi0,
    })
}
