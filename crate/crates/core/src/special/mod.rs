//! Mittag-Leffler function and the Mittag-Leffler distribution.

pub mod gamma;
mod ml;
pub mod quadrature;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arguments of `E_{δ,β}(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MlParams {
    pub delta: f64,
    pub beta: f64,
    pub x: f64,
}

impl MlParams {
    pub fn new(delta: f64, beta: f64, x: f64) -> Self {
        Self { delta, beta, x }
    }
}

/// Two-parameter Mittag-Leffler function `Σ x^j / Γ(δj + β)`.
///
/// Supports every `x` for `0 < δ <= 1`; for `δ > 1` only the series range.
pub fn ml(p: MlParams) -> Result<f64> {
    ml::evaluate(p.delta, p.beta, p.x)
}

/// Shorthand for [`ml`].
pub fn mittag_leffler(delta: f64, beta: f64, x: f64) -> Result<f64> {
    ml::evaluate(delta, beta, x)
}

/// Mittag-Leffler law with survival function `E_{ν,1}(-θ t^ν)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MlDistribution {
    pub nu: f64,
    pub theta: f64,
}

impl MlDistribution {
    pub fn new(nu: f64, theta: f64) -> Result<Self> {
        check_nu(nu)?;
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::domain(format!("rate must be positive and finite, got {theta}")));
        }
        Ok(Self { nu, theta })
    }

    pub fn survival(&self, t: f64) -> Result<f64> {
        ml_survival(*self, t)
    }

    pub fn cdf(&self, t: f64) -> Result<f64> {
        ml_cdf(*self, t)
    }

    pub fn pdf(&self, t: f64) -> Result<f64> {
        ml_pdf(*self, t)
    }
}

pub(crate) fn check_nu(nu: f64) -> Result<()> {
    if nu > 0.0 && nu <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("ν must lie in (0, 1], got {nu}")))
    }
}

fn check_dist(d: MlDistribution) -> Result<()> {
    MlDistribution::new(d.nu, d.theta).map(|_| ())
}

/// `P(T > t) = E_{ν,1}(-θ t^ν)`.
pub fn ml_survival(d: MlDistribution, t: f64) -> Result<f64> {
    check_dist(d)?;
    if !(t >= 0.0) {
        return Err(Error::domain(format!("time must be non-negative, got {t}")));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    if t.is_infinite() {
        return Ok(0.0);
    }
    if d.nu == 1.0 {
        return Ok((-d.theta * t).exp());
    }
    ml::evaluate(d.nu, 1.0, -d.theta * t.powf(d.nu))
}

/// `P(T <= t)`, computed without cancellation for small `t`.
pub fn ml_cdf(d: MlDistribution, t: f64) -> Result<f64> {
    check_dist(d)?;
    if !(t >= 0.0) {
        return Err(Error::domain(format!("time must be non-negative, got {t}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    if t.is_infinite() {
        return Ok(1.0);
    }
    if d.nu == 1.0 {
        return Ok(-(-d.theta * t).exp_m1());
    }
    let y = d.theta * t.powf(d.nu);
    if y < 0.5 {
        // 1 - E_{ν,1}(-y) = y E_{ν,ν+1}(-y)
        return Ok(y * ml::evaluate(d.nu, d.nu + 1.0, -y)?);
    }
    Ok(1.0 - ml::evaluate(d.nu, 1.0, -y)?)
}

/// Density `θ t^{ν-1} E_{ν,ν}(-θ t^ν)`.
pub fn ml_pdf(d: MlDistribution, t: f64) -> Result<f64> {
    check_dist(d)?;
    if !(t > 0.0) {
        return Err(Error::domain(format!("density needs t > 0, got {t}")));
    }
    if t.is_infinite() {
        return Ok(0.0);
    }
    if d.nu == 1.0 {
        return Ok(d.theta * (-d.theta * t).exp());
    }
    let e = ml::evaluate(d.nu, d.nu, -d.theta * t.powf(d.nu))?;
    Ok(d.theta * t.powf(d.nu - 1.0) * e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    /// `e^{y²} erfc(y)` evaluated with the continued fraction for large y and a
    /// direct series for small y; independent of the crate's evaluator.
    fn erfcx(y: f64) -> f64 {
        if y < 2.0 {
            // erf series: 2/√π Σ (-1)^n y^{2n+1} / (n! (2n+1))
            let mut s = 0.0;
            let mut term = y;
            for n in 0..200 {
                s += term / (2 * n + 1) as f64;
                term *= -y * y / (n + 1) as f64;
            }
            (y * y).exp() * (1.0 - 2.0 / std::f64::consts::PI.sqrt() * s)
        } else {
            // Lentz continued fraction for √π e^{y²} erfc(y) = 1/(y + (1/2)/(y + 1/(y + (3/2)/(y + ...))))
            let mut f = y;
            for k in (1..400).rev() {
                f = y + (k as f64 / 2.0) / f;
            }
            1.0 / (f * std::f64::consts::PI.sqrt())
        }
    }

    #[test]
    fn spec_examples() {
        assert!(rel(mittag_leffler(1.0, 1.0, 1.0).unwrap(), E) < 1e-15);
        assert_eq!(mittag_leffler(0.5, 1.0, 0.0).unwrap(), 1.0);
        assert!(rel(mittag_leffler(0.5, 1.0, -1.0).unwrap(), 0.427_583_576_155_807) < 1e-12);
        let d = MlDistribution::new(1.0, 2.0).unwrap();
        assert!(rel(ml_survival(d, 0.5).unwrap(), (-1.0f64).exp()) < 1e-15);
        let d = MlDistribution::new(0.5, 1.0).unwrap();
        assert!(rel(ml_survival(d, 1.0).unwrap(), 0.427_583_576_155_807) < 1e-12);
        let d = MlDistribution::new(1.0, 3.0).unwrap();
        assert!(rel(ml_pdf(d, 1.0).unwrap(), 3.0 * (-3.0f64).exp()) < 1e-15);
    }

    #[test]
    fn half_order_matches_scaled_erfc() {
        for i in 0..=200 {
            let y = i as f64 * 0.05;
            let got = mittag_leffler(0.5, 1.0, -y).unwrap();
            assert!(rel(got, erfcx(y)) < 1e-10, "y={y}: {got} vs {}", erfcx(y));
        }
        for &y in &[30.0, 100.0, 1e3, 1e5, 1e6] {
            let got = mittag_leffler(0.5, 1.0, -y).unwrap();
            assert!(rel(got, erfcx(y)) < 1e-10, "y={y}");
        }
    }

    #[test]
    fn exponential_case() {
        for i in 0..1000 {
            let x = -50.0 + 55.0 * i as f64 / 999.0;
            assert!(rel(mittag_leffler(1.0, 1.0, x).unwrap(), x.exp()) < 1e-14);
        }
    }

    #[test]
    fn values_at_zero() {
        for &nu in &[0.05, 0.3, 0.5, 0.9, 1.0] {
            assert_eq!(mittag_leffler(nu, 1.0, 0.0).unwrap(), 1.0);
            let g = gamma::gamma(nu);
            assert!(rel(mittag_leffler(nu, nu, 0.0).unwrap(), 1.0 / g) < 1e-14);
        }
    }

    #[test]
    fn domain_and_overflow_errors() {
        assert!(matches!(mittag_leffler(0.0, 1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(mittag_leffler(0.5, -1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(mittag_leffler(1.0, 1.0, 800.0), Err(Error::Overflow(_))));
        assert!(matches!(mittag_leffler(0.5, 1.0, 30.0), Err(Error::Overflow(_))));
        let d = MlDistribution::new(0.5, 1.0).unwrap();
        assert!(ml_survival(d, -1.0).is_err());
        assert!(ml_pdf(d, 0.0).is_err());
        assert!(MlDistribution::new(1.2, 1.0).is_err());
    }

    #[test]
    fn positive_arguments_match_known_values() {
        // E_{1/2,1}(x) = e^{x²} erfc(-x) = e^{x²}(2 - erfc(x))
        for &x in &[0.5f64, 1.0, 3.0, 10.0, 25.0] {
            let want = (x * x).exp() * (2.0 - (-(x * x)).exp() * erfcx(x));
            assert!(rel(mittag_leffler(0.5, 1.0, x).unwrap(), want) < 1e-12, "x={x}");
        }
        // E_{2,1}(x) = cosh(√x)
        assert!(rel(mittag_leffler(2.0, 1.0, 4.0).unwrap(), 2f64.cosh()) < 1e-14);
        assert!(rel(mittag_leffler(2.0, 1.0, -4.0).unwrap(), 2f64.cos()) < 1e-12);
    }

    #[test]
    fn beta_recursion_matches_series() {
        // E_{δ,1+δ}(-y) = (1 - E_{δ,1}(-y)) / y
        for &(d, y) in &[(0.3, 5.0), (0.7, 40.0), (0.5, 3.0e3)] {
            let a = mittag_leffler(d, 1.0 + d, -y).unwrap();
            let b = (1.0 - mittag_leffler(d, 1.0, -y).unwrap()) / y;
            assert!(rel(a, b) < 1e-10, "δ={d} y={y}: {a} vs {b}");
        }
    }

    #[test]
    fn density_integrates_to_one() {
        let d = MlDistribution::new(0.7, 2.0).unwrap();
        // substitute t = u^{1/ν} to remove the singularity at zero and split the tail
        let nu = d.nu;
        let f = |u: f64| {
            if u <= 0.0 {
                return d.theta / nu * crate::special::gamma::rgamma(nu);
            }
            let t = u.powf(1.0 / nu);
            ml_pdf(d, t).unwrap() * t / (nu * u)
        };
        let tol = quadrature::Tolerance::default();
        let head = quadrature::integrate(f, 0.0, 50.0, &[1.0, 5.0], tol).unwrap();
        let tail = ml_survival(d, 50f64.powf(1.0 / nu)).unwrap();
        assert!((head + tail - 1.0).abs() < 1e-6, "{}", head + tail);
    }

    #[test]
    fn density_is_derivative_of_survival() {
        let d = MlDistribution::new(0.6, 1.0).unwrap();
        let h = 1e-5;
        for &t in &[0.05, 0.3, 1.0, 2.5, 10.0, 60.0] {
            let fd = -(ml_survival(d, t + h).unwrap() - ml_survival(d, t - h).unwrap()) / (2.0 * h);
            let pdf = ml_pdf(d, t).unwrap();
            assert!((fd - pdf).abs() < 1e-4 * pdf.max(1.0), "t={t}");
        }
    }

    #[test]
    fn cdf_complements_survival() {
        for &nu in &[0.25, 0.5, 0.75, 1.0] {
            let d = MlDistribution::new(nu, 1.5).unwrap();
            for &t in &[1e-6, 0.01, 0.3, 1.0, 7.0, 1e4] {
                let s = ml_survival(d, t).unwrap();
                let c = ml_cdf(d, t).unwrap();
                assert!((s + c - 1.0).abs() < 1e-12, "ν={nu} t={t}");
            }
        }
    }

    #[test]
    fn survival_is_monotone_on_grid() {
        for &nu in &[0.05, 0.25, 0.5, 0.75, 0.95, 1.0] {
            for &theta in &[0.5, 1.0, 5.0] {
                let d = MlDistribution::new(nu, theta).unwrap();
                let mut prev = 1.0;
                for i in 0..1000 {
                    let t = 1e-4 * 1.02f64.powi(i);
                    let s = ml_survival(d, t).unwrap();
                    // only the exponential case can underflow on this grid
                    assert!((s > 0.0 || nu == 1.0) && s <= 1.0, "ν={nu} θ={theta} t={t}: {s}");
                    assert!(s <= prev * (1.0 + 1e-12), "ν={nu} θ={theta} t={t}");
                    prev = s;
                }
            }
        }
    }

    #[test]
    fn operating_domain_is_covered() {
        for i in 0..=19 {
            let delta = 0.05 + 0.05 * i as f64;
            for &beta in &[1.0, delta] {
                for &x in &[-1e6, -1e4, -300.0, -20.0, -1.0, 0.5, 1.0] {
                    let v = mittag_leffler(delta, beta, x);
                    assert!(v.as_ref().is_ok_and(|v| v.is_finite()), "δ={delta} β={beta} x={x}: {v:?}");
                }
            }
        }
    }
}
