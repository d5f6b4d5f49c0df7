//! Evaluation regimes for the two-parameter Mittag-Leffler function on the real line.
//!
//! * power series, used for every positive argument and for negative arguments
//!   with `|x|^{1/δ} <= SERIES_LIMIT`;
//! * the algebraic asymptotic expansion for large negative arguments, accepted
//!   only when its optimally truncated remainder is below tolerance;
//! * a real-line integral obtained by collapsing the Laplace inversion contour
//!   onto the negative axis, used in between (and as fallback) for `0 < δ < 1`.

use std::f64::consts::PI;

use super::gamma::{ln_gamma, ln_rgamma_signed, rgamma, sin_pi, GAMMA_MAX_ARG};
use super::quadrature::{integrate, Tolerance};
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

/// Series is used for negative arguments while `|x|^{1/δ}` stays below this.
pub(crate) const SERIES_LIMIT: f64 = 4.0;

/// The asymptotic expansion is tried once `|x|^{1/δ}` exceeds this.
pub(crate) const ASYMPTOTIC_LIMIT: f64 = 30.0;

const MAX_SERIES_TERMS: usize = 2_000_000;

/// Largest `ln` of a representable result.
const LN_MAX: f64 = 709.0;

pub(crate) fn evaluate(delta: f64, beta: f64, x: f64) -> Result<f64> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::domain(format!("first index must be positive, got {delta}")));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::domain(format!("second index must be positive, got {beta}")));
    }
    if x.is_nan() {
        return Err(Error::domain("argument is NaN"));
    }
    if x == 0.0 {
        return Ok(rgamma(beta));
    }
    if delta == 1.0 && beta == 1.0 {
        return if x > LN_MAX {
            Err(Error::Overflow(format!("exp({x}) is not representable")))
        } else {
            Ok(x.exp())
        };
    }
    if x > 0.0 {
        return positive(delta, beta, x);
    }

    let y = -x;
    let ln_t = y.ln() / delta;
    if ln_t <= SERIES_LIMIT.ln() {
        return series(delta, beta, x);
    }
    if delta >= 1.0 {
        return Err(Error::Unsupported(format!(
            "E_{{{delta},{beta}}}({x}): large negative arguments need 0 < δ < 1 unless δ = β = 1"
        )));
    }
    negative(delta, beta, y, ln_t)
}

fn positive(delta: f64, beta: f64, x: f64) -> Result<f64> {
    // leading growth (1/δ) x^{(1-β)/δ} exp(x^{1/δ})
    let ln_x = x.ln();
    let growth = (ln_x / delta).exp();
    let ln_lead = -delta.ln() + (1.0 - beta) / delta * ln_x + growth;
    if ln_lead > LN_MAX {
        return Err(Error::Overflow(format!(
            "E_{{{delta},{beta}}}({x}) exceeds the representable range"
        )));
    }
    series(delta, beta, x)
}

/// Plain power series with compensated summation.
fn series(delta: f64, beta: f64, x: f64) -> Result<f64> {
    let ln_abs = x.abs().ln();
    let negative = x < 0.0;
    let mut sum = CompensatedSum::new();
    let mut power = 1.0f64;
    let mut prev_mag = f64::INFINITY;
    for j in 0..MAX_SERIES_TERMS {
        let arg = delta * j as f64 + beta;
        let term = if arg < GAMMA_MAX_ARG - 1.0 && power.is_finite() && power != 0.0 {
            power * rgamma(arg)
        } else {
            let mag = j as f64 * ln_abs - ln_gamma(arg);
            let sign = if negative && j % 2 == 1 { -1.0 } else { 1.0 };
            sign * mag.exp()
        };
        power *= x;
        sum.add(term);
        let mag = term.abs();
        let total = sum.value().abs();
        if j > 0 && mag <= prev_mag && mag <= 1e-17 * total {
            return Ok(sum.value());
        }
        if j > 0 && mag == 0.0 && prev_mag == 0.0 {
            return Ok(sum.value());
        }
        prev_mag = mag;
    }
    Err(Error::Numerical(format!(
        "Mittag-Leffler series did not converge for ({delta}, {beta}, {x})"
    )))
}

fn negative(delta: f64, beta: f64, y: f64, ln_t: f64) -> Result<f64> {
    if beta > 1.0 {
        // E_{δ,β}(z) = (E_{δ,β-δ}(z) - 1/Γ(β-δ)) / z
        let lower = negative(delta, beta - delta, y, ln_t)?;
        return Ok((lower - rgamma(beta - delta)) / -y);
    }
    if ln_t >= ASYMPTOTIC_LIMIT.ln() {
        if let Some(v) = asymptotic(delta, beta, y) {
            return Ok(v);
        }
    }
    contour_integral(delta, beta, y)
}

/// `Σ_{k>=1} (-1)^{k+1} y^{-k} / Γ(β - δk)`, optimally truncated.
///
/// Returns `None` when the smallest term is not negligible against the sum.
pub(crate) fn asymptotic(delta: f64, beta: f64, y: f64) -> Option<f64> {
    let ln_y = y.ln();
    let mut sum = CompensatedSum::new();
    let mut prev_env = f64::INFINITY;
    for k in 1..=4000usize {
        let kf = k as f64;
        let z = beta - delta * kf;
        // envelope ignoring the sin(πz) factor of the reflection formula
        let env = if z < 0.5 { ln_gamma(1.0 - z) - PI.ln() } else { -ln_gamma(z) } - kf * ln_y;
        if env > prev_env && k > 2 {
            break;
        }
        prev_env = env;
        let (s, ln_r) = ln_rgamma_signed(z);
        if s != 0.0 {
            let sign = if k % 2 == 1 { s } else { -s };
            sum.add(sign * (ln_r - kf * ln_y).exp());
        }
        let total = sum.value().abs();
        if total > 0.0 && env < (1e-16 * total).ln() {
            return Some(sum.value());
        }
    }
    None
}

/// Real-line integral for `E_{δ,β}(-y)` with `0 < δ < 1`, `0 < β <= 1`.
pub(crate) fn contour_integral(delta: f64, beta: f64, y: f64) -> Result<f64> {
    let inv = 1.0 / delta;
    let p = (1.0 - beta) / delta;
    let sb = sin_pi(beta);
    let sbd = sin_pi(beta - delta);
    let c = (PI * delta).cos();
    let upper = 100f64.powf(delta);
    let f = |v: f64| {
        if v <= 0.0 {
            return if p == 0.0 { y * sbd / (y * y) } else { 0.0 };
        }
        let damp = (-v.powf(inv)).exp();
        let den = v * v + 2.0 * v * y * c + y * y;
        damp * v.powf(p) * (v * sb + y * sbd) / den
    };
    let mut breaks = vec![0.25 * upper.min(1.0), upper.min(1.0), 0.5 * (1.0 + upper)];
    if c < 0.0 {
        let peak = -y * c;
        if peak < upper {
            let width = y * sin_pi(delta);
            breaks.extend([peak - 4.0 * width, peak, peak + 4.0 * width]);
        }
    }
    let tol = Tolerance {
        abs: 1e-300,
        rel: 1e-13,
        max_intervals: 4000,
    };
    let v = integrate(f, 0.0, upper, &breaks, tol)?;
    Ok(v / (PI * delta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn asymptotic_and_integral_agree_in_the_overlap() {
        for &delta in &[0.05, 0.2, 0.45, 0.5, 0.6, 0.75, 0.9, 0.99] {
            for &beta in &[1.0, delta] {
                for &t in &[ASYMPTOTIC_LIMIT, 60.0, 200.0] {
                    let y = f64::powf(t, delta);
                    let Some(a) = asymptotic(delta, beta, y) else {
                        assert!(t < 60.0, "no convergence δ={delta} β={beta} t={t}");
                        continue;
                    };
                    let b = contour_integral(delta, beta, y).unwrap();
                    assert!(((a - b) / b).abs() < 1e-10, "δ={delta} β={beta} t={t}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn series_and_integral_agree_at_series_limit() {
        for &delta in &[0.05, 0.3, 0.5, 0.7, 0.95] {
            for &beta in &[1.0, delta] {
                let y = f64::powf(SERIES_LIMIT, delta);
                let a = series(delta, beta, -y).unwrap();
                let b = contour_integral(delta, beta, y).unwrap();
                assert!(((a - b) / b).abs() < 1e-11, "δ={delta} β={beta}: {a} vs {b}");
            }
        }
    }
}
