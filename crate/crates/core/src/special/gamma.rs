//! Gamma-function helpers shared by the series and asymptotic evaluators.

use std::f64::consts::PI;

/// Largest argument for which `Γ(x)` is finite in `f64`.
pub const GAMMA_MAX_ARG: f64 = 171.6;

pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// `ln|Γ(x)|`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `sin(πx)` with exact argument reduction, so integers give exactly zero.
pub fn sin_pi(x: f64) -> f64 {
    let r = x % 2.0;
    let r = if r < 0.0 { r + 2.0 } else { r };
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    // fold into [-1/2, 1/2]
    let arg = if r <= 0.5 {
        r
    } else if r <= 1.5 {
        1.0 - r
    } else {
        r - 2.0
    };
    (PI * arg).sin()
}

/// Reciprocal gamma `1/Γ(z)` as `(sign, ln|1/Γ(z)|)`, finite for every real `z`.
///
/// Returns `sign == 0.0` at the poles `z = 0, -1, -2, …`, where `1/Γ` vanishes.
pub fn ln_rgamma_signed(z: f64) -> (f64, f64) {
    if z > 0.5 {
        return (1.0, -ln_gamma(z));
    }
    // reflection: 1/Γ(z) = sin(πz) Γ(1-z) / π
    let s = sin_pi(z);
    if s == 0.0 {
        return (0.0, f64::NEG_INFINITY);
    }
    (s.signum(), s.abs().ln() + ln_gamma(1.0 - z) - PI.ln())
}

/// `1/Γ(z)` for moderate arguments.
pub fn rgamma(z: f64) -> f64 {
    let (sign, ln) = ln_rgamma_signed(z);
    if sign == 0.0 {
        return 0.0;
    }
    if z.abs() < GAMMA_MAX_ARG - 1.0 {
        return 1.0 / gamma(z);
    }
    sign * ln.exp()
}
