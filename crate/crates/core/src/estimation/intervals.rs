//! Asymptotic and bootstrap interval estimators.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::{error_variance, nu_from_error_variance, point_estimates, RegressionData, RegressionFit};
use crate::error::{Error, Result};
use crate::numeric::{quantile_sorted, sum};
use crate::variates::RandomSource;
use crate::EULER_GAMMA;

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "interval bounds out of order: {lo} > {hi}");
        Self { lo, hi }
    }

    pub fn symmetric(center: f64, half_width: f64) -> Self {
        Self::new(center - half_width, center + half_width)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

/// Error-variance plug-in for the LS intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorVariance {
    /// `π²(1/(3ν̂_ls²) - 1/6)`.
    #[default]
    LsPlugIn,
    /// `π²(1/(3ν̂_res²) - 1/6)`.
    ResPlugIn,
    /// The residual variance `σ̂²_u`.
    Residual,
}

/// Upper `alpha/2` standard normal quantile.
pub fn normal_quantile(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    Ok(Normal::standard().inverse_cdf(1.0 - alpha / 2.0))
}

/// Delta-method intervals for `(ν̂_ls, rate_ls)`; `None` when the plug-in
/// error variance is negative.
pub fn ci_ls(f: &RegressionFit, alpha: f64, variance: ErrorVariance) -> Result<(Option<Interval>, Option<Interval>)> {
    let z = normal_quantile(alpha)?;
    let p = point_estimates(f)?;
    let sigma2 = match variance {
        ErrorVariance::LsPlugIn => error_variance(p.nu_ls),
        ErrorVariance::ResPlugIn => error_variance(p.nu_res),
        ErrorVariance::Residual => f.sigma2_u,
    };
    if !(sigma2 >= 0.0) {
        return Ok((None, None));
    }
    let sigma = sigma2.sqrt();
    let (nu, rate) = (p.nu_ls, p.rate_ls);
    let n = f.n as f64;
    let half_nu = z * sigma * nu * nu * (1.0 / f.s_xx).sqrt();
    let half_rate = z * sigma * (nu * rate).abs() * (1.0 / n + (f.x_bar + rate.ln()).powi(2) / f.s_xx).sqrt();
    Ok((Some(Interval::symmetric(nu, half_nu.abs())), Some(Interval::symmetric(rate, half_rate))))
}

/// `ν²(32 - 20ν² - ν⁴)/40`, the scaled asymptotic variance of `ν̂_res`.
fn res_nu_variance_factor(nu: f64) -> f64 {
    let nu2 = nu * nu;
    nu2 * (32.0 - 20.0 * nu2 - nu2 * nu2) / 40.0
}

/// Residual-based intervals for `(ν̂_res, rate_res)`; `None` when `ν̂_res` is
/// beyond the root of `32 - 20ν² - ν⁴`.
///
/// The rate interval is the delta-method propagation of `ν̂_res` and the
/// intercept through `exp(-ν(a₀ + γ))`.
pub fn ci_res(f: &RegressionFit, alpha: f64) -> Result<(Option<Interval>, Option<Interval>)> {
    let z = normal_quantile(alpha)?;
    let p = point_estimates(f)?;
    let n = f.n as f64;
    let v = res_nu_variance_factor(p.nu_res);
    if v < 0.0 {
        return Ok((None, None));
    }
    let var_nu = v / n;
    let shift = f.intercept + EULER_GAMMA;
    let var_rate = p.rate_res.powi(2)
        * (shift * shift * var_nu + p.nu_res.powi(2) * f.sigma2_u * (1.0 / n + f.x_bar.powi(2) / f.s_xx));
    Ok((
        Some(Interval::symmetric(p.nu_res, z * var_nu.sqrt())),
        Some(Interval::symmetric(p.rate_res, z * var_rate.sqrt())),
    ))
}

/// Percentile bootstrap interval for the residual-based rate estimate.
///
/// Regressors stay fixed; residuals are rescaled by `1/√(1 - h_i)`, resampled
/// with replacement and added to the fitted values before refitting.
pub fn ci_bootstrap_rate(
    f: &RegressionFit,
    d: &RegressionData,
    alpha: f64,
    b: usize,
    rng: &mut RandomSource,
) -> Result<Interval> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if b < 100 {
        return Err(Error::domain(format!("at least 100 bootstrap replicates are required, got {b}")));
    }
    if d.n() != f.n {
        return Err(Error::Input("fit and data sizes differ".into()));
    }
    let n = f.n;
    let adjusted: Vec<f64> = f
        .residuals
        .iter()
        .zip(&f.leverages)
        .map(|(e, h)| if 1.0 - h > 1e-12 { e / (1.0 - h).sqrt() } else { 0.0 })
        .collect();
    let centred_x: Vec<f64> = d.x.iter().map(|x| x - f.x_bar).collect();
    let mut y = vec![0.0; n];
    let mut stats = Vec::with_capacity(b);
    for _ in 0..b {
        for (yi, fi) in y.iter_mut().zip(&f.fitted) {
            *yi = fi + adjusted[rng.index(n)];
        }
        let y_bar = sum(y.iter().copied()) / n as f64;
        let slope = sum(y.iter().zip(&centred_x).map(|(y, c)| y * c)) / f.s_xx;
        let intercept = y_bar - slope * f.x_bar;
        let sse = sum(y.iter().zip(&d.x).map(|(y, x)| (y - intercept - slope * x).powi(2)));
        let nu = nu_from_error_variance(sse / (n as f64 - 2.0));
        stats.push((-nu * (intercept + EULER_GAMMA)).exp());
    }
    stats.sort_by(f64::total_cmp);
    Ok(Interval::new(quantile_sorted(&stats, alpha / 2.0), quantile_sorted(&stats, 1.0 - alpha / 2.0)))
}

#[cfg(test)]
mod tests {
    use super::super::ls_fit;
    use super::*;

    fn synthetic() -> (RegressionData, RegressionFit) {
        let x: Vec<f64> = (1..=40).map(|i| (i as f64).ln()).collect();
        let y: Vec<f64> = x
            .iter()
            .enumerate()
            .map(|(i, x)| 0.4 - 1.7 * x + 8.0 * ((i * 7919 % 13) as f64 / 13.0 - 0.5))
            .collect();
        let d = RegressionData::new(x, y).unwrap();
        let f = ls_fit(&d).unwrap();
        (d, f)
    }

    #[test]
    fn normal_quantiles() {
        assert!((normal_quantile(0.05).unwrap() - 1.959_963_984_540_054).abs() < 1e-12);
        assert!((normal_quantile(0.01).unwrap() - 2.575_829_303_548_901).abs() < 1e-12);
        assert!(normal_quantile(0.0).is_err());
    }

    #[test]
    fn residual_nu_width_examples() {
        let width = |nu: f64, n: f64| 2.0 * 1.959_963_984_540_054 * (res_nu_variance_factor(nu) / n).sqrt();
        assert!((width(0.5, 100.0) - 0.16083).abs() < 1e-4);
        assert!((width(0.1, 500.0) - 0.0157).abs() < 1e-4);
        assert!(width(0.5, 1e12) < 1e-5);
    }

    #[test]
    fn ls_intervals_match_display_formulas() {
        let (_, f) = synthetic();
        let (nu_iv, rate_iv) = ci_ls(&f, 0.05, ErrorVariance::LsPlugIn).unwrap();
        let (nu_iv, rate_iv) = (nu_iv.unwrap(), rate_iv.unwrap());
        // separate transcription: ν ± z σ ν² s^{-1/2}; λ ± z σ ν λ (1/n + (x̄² + 2 ln λ x̄ + ln² λ)/s)^{1/2}
        let nu = -1.0 / f.slope;
        let lam = ((f.intercept + EULER_GAMMA) / f.slope).exp();
        let sig = (std::f64::consts::PI.powi(2) * (1.0 / (3.0 * nu * nu) - 1.0 / 6.0)).sqrt();
        let z = 1.959_963_984_540_054;
        let hn = z * sig * nu * nu * (1.0 / f.s_xx).sqrt();
        let l = lam.ln();
        let hl = z * sig * nu * lam * (1.0 / 40.0 + (f.x_bar * f.x_bar + 2.0 * l * f.x_bar + l * l) / f.s_xx).sqrt();
        assert!((nu_iv.lo - (nu - hn)).abs() < 1e-12 && (nu_iv.hi - (nu + hn)).abs() < 1e-12);
        assert!((rate_iv.lo - (lam - hl)).abs() < 1e-12 && (rate_iv.hi - (lam + hl)).abs() < 1e-12);
    }

    #[test]
    fn zero_error_variance_gives_point_intervals() {
        let (_, mut f) = synthetic();
        f.sigma2_u = 0.0;
        let (a, b) = ci_ls(&f, 0.05, ErrorVariance::Residual).unwrap();
        assert_eq!(a.unwrap().width(), 0.0);
        assert_eq!(b.unwrap().width(), 0.0);
    }

    #[test]
    fn intervals_nest_under_alpha() {
        let (d, f) = synthetic();
        for v in [ErrorVariance::LsPlugIn, ErrorVariance::ResPlugIn, ErrorVariance::Residual] {
            let (a5, b5) = ci_ls(&f, 0.05, v).unwrap();
            let (a1, b1) = ci_ls(&f, 0.01, v).unwrap();
            assert!(a1.unwrap().lo <= a5.unwrap().lo && a1.unwrap().hi >= a5.unwrap().hi);
            assert!(b1.unwrap().lo <= b5.unwrap().lo && b1.unwrap().hi >= b5.unwrap().hi);
        }
        let (a5, b5) = ci_res(&f, 0.05).unwrap();
        let (a1, b1) = ci_res(&f, 0.01).unwrap();
        assert!(a1.unwrap().lo <= a5.unwrap().lo && a1.unwrap().hi >= a5.unwrap().hi);
        assert!(b1.unwrap().lo <= b5.unwrap().lo && b1.unwrap().hi >= b5.unwrap().hi);
        let k5 = ci_bootstrap_rate(&f, &d, 0.05, 400, &mut RandomSource::new(3, 0)).unwrap();
        let k1 = ci_bootstrap_rate(&f, &d, 0.01, 400, &mut RandomSource::new(3, 0)).unwrap();
        assert!(k1.lo <= k5.lo && k1.hi >= k5.hi);
    }

    #[test]
    fn bootstrap_is_deterministic() {
        let (d, f) = synthetic();
        let a = ci_bootstrap_rate(&f, &d, 0.05, 500, &mut RandomSource::new(8, 2)).unwrap();
        let b = ci_bootstrap_rate(&f, &d, 0.05, 500, &mut RandomSource::new(8, 2)).unwrap();
        assert_eq!(a, b);
        assert!(ci_bootstrap_rate(&f, &d, 0.05, 50, &mut RandomSource::new(8, 2)).is_err());
    }
}
