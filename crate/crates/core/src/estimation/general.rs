//! Estimation for rate families `ln θ_j = m(θ) + q(j)` and `ln θ_j = m(θ) · q(j)`.

use serde::{Deserialize, Serialize};

use super::{ci_res, ls_fit, point_estimates, Interval, RegressionData, RegressionFit};
use crate::error::{Error, Result};
use crate::EULER_GAMMA;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RateFamily {
    /// `ln θ_j = m(θ) + q(j)`: slope `-1/ν`, intercept `-(γ + m(θ)/ν)`.
    Additive,
    /// `ln θ_j = m(θ) · q(j)`: slope `-m(θ)/ν`, intercept `-γ`.
    Multiplicative,
}

/// Which estimate of `ν` the additive family uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum NuRoute {
    #[default]
    Residual,
    LeastSquares,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneralEstimate {
    pub family: RateFamily,
    pub nu: f64,
    pub m_hat: f64,
    pub theta: f64,
    pub ci_nu_res: Option<Interval>,
    pub fit: RegressionFit,
    pub warnings: Vec<String>,
}

/// Regresses `ln T_j` on `q(j)`, `j = 1..=times.len()`, and inverts the family's
/// mean relation. `m_inverse` maps an estimate of `m(θ)` back to `θ`.
///
/// The multiplicative family always uses the residual estimate of `ν`.
pub fn estimate_general<Q, M>(
    family: RateFamily,
    q: Q,
    m_inverse: M,
    times: &[f64],
    alpha: f64,
    route: NuRoute,
) -> Result<GeneralEstimate>
where
    Q: Fn(u64) -> f64,
    M: Fn(f64) -> Result<f64>,
{
    if let Some(bad) = times.iter().find(|&&t| !(t > 0.0 && t.is_finite())) {
        return Err(Error::Input(format!("inter-event times must be positive and finite, found {bad}")));
    }
    let x: Vec<f64> = (1..=times.len() as u64).map(q).collect();
    let d = RegressionData::new(x, times.iter().map(|t| t.ln()).collect())?;
    let fit = ls_fit(&d)?;
    let p = point_estimates(&fit)?;
    let (ci_nu_res, _) = ci_res(&fit, alpha)?;
    let (nu, m_hat) = match family {
        RateFamily::Additive => {
            let nu = match route {
                NuRoute::Residual => p.nu_res,
                NuRoute::LeastSquares => p.nu_ls,
            };
            (nu, -nu * (fit.intercept + EULER_GAMMA))
        }
        RateFamily::Multiplicative => (p.nu_res, -p.nu_res * fit.slope),
    };
    let theta = m_inverse(m_hat)?;
    let mut warnings = Vec::new();
    if !(nu > 0.0 && nu <= 1.0) {
        warnings.push(format!("estimate of ν = {nu:.6} lies outside (0, 1]"));
    }
    Ok(GeneralEstimate { family, nu, m_hat, theta, ci_nu_res, fit, warnings })
}
