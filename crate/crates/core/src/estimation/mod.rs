//! Log-linear regression estimators of `(ν, rate)` from observed inter-event times.
//!
//! For the `j`-th inter-event time with rate `rate · c_j`,
//! `E[ln T_j] = -ln(rate)/ν - γ - ln(c_j)/ν` and `Var[ln T_j] = π²(1/(3ν²) - 1/6)`,
//! so regressing `ln T_j` on `x_j = ln c_j` identifies both parameters.

mod general;
mod intervals;

use std::f64::consts::PI;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::sum;
use crate::processes::{ProcessKind, ProcessType, SamplePath};
use crate::variates::RandomSource;
use crate::EULER_GAMMA;

pub use general::{estimate_general, GeneralEstimate, NuRoute, RateFamily};
pub use intervals::{ci_bootstrap_rate, ci_ls, ci_res, normal_quantile, ErrorVariance, Interval};

/// Sample sizes below this get a reliability warning on their intervals.
pub const SMALL_SAMPLE: usize = 15;

/// Responses `y = ln T` and regressors `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionData {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl RegressionData {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Input(format!("{} regressors but {} responses", x.len(), y.len())));
        }
        if x.len() < 3 {
            return Err(Error::InsufficientData(format!(
                "need at least 3 inter-event times, got {}",
                x.len()
            )));
        }
        if x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::Input("regression data must be finite".into()));
        }
        Ok(Self { x, y })
    }

    /// Design from inter-event times and the rate multipliers `c_j` of their events.
    pub fn from_times(times: &[f64], factors: impl IntoIterator<Item = f64>) -> Result<Self> {
        if let Some(bad) = times.iter().find(|&&t| !(t > 0.0 && t.is_finite())) {
            return Err(Error::Input(format!(
                "inter-event times must be positive and finite, found {bad}"
            )));
        }
        let x: Vec<f64> = factors.into_iter().take(times.len()).map(f64::ln).collect();
        if x.len() != times.len() {
            return Err(Error::Input("fewer regressor values than times".into()));
        }
        Self::new(x, times.iter().map(|t| t.ln()).collect())
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }
}

/// Regression design of a simulated path: `x_j = ln c_j` for the path's rate schedule.
pub fn build_design(path: &SamplePath) -> Result<RegressionData> {
    let p = path.process;
    RegressionData::from_times(&path.inter_times, (0..path.len() as u64).map(|j| p.rate_factor(j)))
}

/// Design for externally observed inter-event times.
///
/// Yule times are indexed from `start_index` (population size during the
/// first observed interval); death times from the first death of `n0`.
pub fn design_for(kind: ProcessType, times: &[f64], start_index: u64, n0: u64) -> Result<RegressionData> {
    match kind {
        ProcessType::Yule => {
            if start_index == 0 {
                return Err(Error::Input("start index must be at least 1".into()));
            }
            RegressionData::from_times(times, (0..).map(|j: u64| (start_index + j) as f64))
        }
        _ => {
            if (times.len() as u64) > n0 {
                return Err(Error::Input(format!(
                    "{} death times exceed the initial population n0 = {n0}",
                    times.len()
                )));
            }
            let process = ProcessKind::new(kind, 0.5, 1.0, n0)?;
            RegressionData::from_times(times, (0..n0).map(|k| process.rate_factor(k)))
        }
    }
}

/// Closed-form least-squares fit with its diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub intercept: f64,
    pub slope: f64,
    pub fitted: Vec<f64>,
    pub residuals: Vec<f64>,
    pub leverages: Vec<f64>,
    /// `Σ ε̂² / (n - 2)`.
    pub sigma2_u: f64,
    /// `Σ (x - x̄)²`.
    pub s_xx: f64,
    pub x_bar: f64,
    pub n: usize,
}

pub fn ls_fit(d: &RegressionData) -> Result<RegressionFit> {
    let n = d.n();
    if n < 3 {
        return Err(Error::InsufficientData(format!("need at least 3 observations, got {n}")));
    }
    let nf = n as f64;
    let x_bar = sum(d.x.iter().copied()) / nf;
    let s_xx = sum(d.x.iter().map(|x| (x - x_bar).powi(2)));
    if !(s_xx > 0.0) {
        return Err(Error::SingularDesign);
    }
    let y_bar = sum(d.y.iter().copied()) / nf;
    let slope = sum(d.x.iter().zip(&d.y).map(|(x, y)| y * (x - x_bar))) / s_xx;
    let intercept = y_bar - slope * x_bar;
    let fitted: Vec<f64> = d.x.iter().map(|x| intercept + slope * x).collect();
    let residuals: Vec<f64> = d.y.iter().zip(&fitted).map(|(y, f)| y - f).collect();
    let leverages = d.x.iter().map(|x| 1.0 / nf + (x - x_bar).powi(2) / s_xx).collect();
    let sigma2_u = sum(residuals.iter().map(|e| e * e)) / (nf - 2.0);
    Ok(RegressionFit { intercept, slope, fitted, residuals, leverages, sigma2_u, s_xx, x_bar, n })
}

impl RegressionFit {
    /// Writes `index,x,y,fitted,residual,leverage`, one row per observation.
    pub fn write_residual_csv<W: Write>(&self, d: &RegressionData, mut w: W) -> Result<()> {
        writeln!(w, "index,x,y,fitted,residual,leverage")?;
        for i in 0..self.n {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                i + 1,
                d.x[i],
                d.y[i],
                self.fitted[i],
                self.residuals[i],
                self.leverages[i]
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointEstimates {
    pub nu_ls: f64,
    pub rate_ls: f64,
    pub nu_res: f64,
    pub rate_res: f64,
}

/// `ν` implied by an error variance through `σ² = π²(1/(3ν²) - 1/6)`.
pub fn nu_from_error_variance(sigma2: f64) -> f64 {
    1.0 / (3.0 * (sigma2 / (PI * PI) + 1.0 / 6.0)).sqrt()
}

/// Error variance `π²(1/(3ν²) - 1/6)` of `ln T` for index `ν`.
pub fn error_variance(nu: f64) -> f64 {
    PI * PI * (1.0 / (3.0 * nu * nu) - 1.0 / 6.0)
}

pub fn point_estimates(f: &RegressionFit) -> Result<PointEstimates> {
    if f.slope == 0.0 {
        return Err(Error::DegenerateSlope);
    }
    let nu_ls = -1.0 / f.slope;
    let rate_ls = ((f.intercept + EULER_GAMMA) / f.slope).exp();
    let nu_res = nu_from_error_variance(f.sigma2_u);
    let rate_res = (-nu_res * (f.intercept + EULER_GAMMA)).exp();
    Ok(PointEstimates { nu_ls, rate_ls, nu_res, rate_res })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateOptions {
    pub alpha: f64,
    /// Bootstrap replicates for the rate interval; 0 skips the bootstrap.
    pub bootstrap_b: usize,
    pub error_variance: ErrorVariance,
    /// Clip negative lower bounds at zero (presentation only).
    pub truncate_at_zero: bool,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        Self { alpha: 0.05, bootstrap_b: 500, error_variance: ErrorVariance::LsPlugIn, truncate_at_zero: false }
    }
}

/// Point and interval estimates for one data set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub n: usize,
    pub alpha: f64,
    pub intercept: f64,
    pub slope: f64,
    pub sigma2_u: f64,
    pub s_xx: f64,
    pub x_bar: f64,
    pub nu_ls: f64,
    pub rate_ls: f64,
    pub nu_res: f64,
    pub rate_res: f64,
    pub ci_nu_ls: Option<Interval>,
    pub ci_rate_ls: Option<Interval>,
    pub ci_nu_res: Option<Interval>,
    pub ci_rate_res: Option<Interval>,
    pub ci_rate_boot: Option<Interval>,
    pub bootstrap_b: usize,
    pub warnings: Vec<String>,
}

/// Fits, estimates and builds every interval for `d`.
pub fn estimate(d: &RegressionData, opts: &EstimateOptions, rng: &mut RandomSource) -> Result<EstimateReport> {
    let fit = ls_fit(d)?;
    estimate_from_fit(d, &fit, opts, rng)
}

pub fn estimate_from_fit(
    d: &RegressionData,
    fit: &RegressionFit,
    opts: &EstimateOptions,
    rng: &mut RandomSource,
) -> Result<EstimateReport> {
    if !(opts.alpha > 0.0 && opts.alpha < 1.0) {
        return Err(Error::domain(format!("alpha must lie in (0, 1), got {}", opts.alpha)));
    }
    let p = point_estimates(fit)?;
    let mut warnings = Vec::new();
    if fit.slope >= 0.0 {
        warnings.push(format!("non-negative slope {:.6}: LS estimate of ν is not positive", fit.slope));
    } else if p.nu_ls > 1.0 {
        warnings.push(format!("LS estimate of ν = {:.6} lies above 1", p.nu_ls));
    }
    if p.nu_res > 1.0 {
        warnings.push(format!("residual estimate of ν = {:.6} lies above 1", p.nu_res));
    }
    if fit.n < SMALL_SAMPLE {
        warnings.push(format!("n = {} < {SMALL_SAMPLE}: interval estimates are unreliable", fit.n));
    }

    let (ci_nu_ls, ci_rate_ls) = ci_ls(fit, opts.alpha, opts.error_variance)?;
    if ci_nu_ls.is_none() {
        warnings.push("LS intervals unavailable: the plug-in error variance is negative".into());
    }
    let (ci_nu_res, ci_rate_res) = ci_res(fit, opts.alpha)?;
    if ci_nu_res.is_none() {
        warnings.push("residual intervals unavailable: ν̂_res exceeds the admissible range".into());
    }
    let ci_rate_boot = if opts.bootstrap_b > 0 {
        Some(ci_bootstrap_rate(fit, d, opts.alpha, opts.bootstrap_b, rng)?)
    } else {
        None
    };

    let mut intervals = [ci_nu_ls, ci_rate_ls, ci_nu_res, ci_rate_res, ci_rate_boot];
    let names = ["ν (LS)", "rate (LS)", "ν (residual)", "rate (residual)", "rate (bootstrap)"];
    for (iv, name) in intervals.iter_mut().zip(names) {
        if let Some(iv) = iv {
            if iv.lo < 0.0 {
                warnings.push(format!("{name} interval has a negative lower bound {:.6}", iv.lo));
                if opts.truncate_at_zero {
                    iv.lo = 0.0;
                }
            }
        }
    }
    let [ci_nu_ls, ci_rate_ls, ci_nu_res, ci_rate_res, ci_rate_boot] = intervals;

    Ok(EstimateReport {
        n: fit.n,
        alpha: opts.alpha,
        intercept: fit.intercept,
        slope: fit.slope,
        sigma2_u: fit.sigma2_u,
        s_xx: fit.s_xx,
        x_bar: fit.x_bar,
        nu_ls: p.nu_ls,
        rate_ls: p.rate_ls,
        nu_res: p.nu_res,
        rate_res: p.rate_res,
        ci_nu_ls,
        ci_rate_ls,
        ci_nu_res,
        ci_rate_res,
        ci_rate_boot,
        bootstrap_b: opts.bootstrap_b,
        warnings,
    })
}
