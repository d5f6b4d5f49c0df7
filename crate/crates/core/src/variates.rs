//! Reproducible random streams and Mittag-Leffler / one-sided stable variates.
//!
//! Every stream is a ChaCha20 generator keyed by `seed` with the 64-bit stream
//! selector set to `stream_id`, so replications can be generated in any order
//! and on any number of threads without changing their values.

use rand::distr::{Distribution, Open01};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::special::MlDistribution;

/// A seeded, independently addressable random stream.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha20Rng,
    seed: u64,
    stream_id: u64,
}

impl RandomSource {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self { rng, seed, stream_id }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform on the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        Open01.sample(&mut self.rng)
    }

    /// Standard exponential variate.
    pub fn exponential(&mut self) -> f64 {
        -self.uniform().ln()
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "index range must be non-empty");
        self.rng.random_range(0..n as u64) as usize
    }
}

/// Index of the one-sided stable law with Laplace transform `exp(-s^ν)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableParams {
    pub nu: f64,
}

impl StableParams {
    pub fn new(nu: f64) -> Result<Self> {
        if nu > 0.0 && nu < 1.0 {
            Ok(Self { nu })
        } else {
            Err(Error::domain(format!("stable index must lie in (0, 1), got {nu}")))
        }
    }
}

/// `ln S` for a one-sided ν-stable draw (Kanter's representation).
///
/// Consumes one uniform and one exponential, in that order.
pub fn sample_ln_stable(p: StableParams, rng: &mut RandomSource) -> Result<f64> {
    let p = StableParams::new(p.nu)?;
    let nu = p.nu;
    let u = rng.uniform();
    let w = rng.exponential();
    let pi_u = std::f64::consts::PI * u;
    let r = (1.0 - nu) / nu;
    Ok((nu * pi_u).sin().ln() + r * ((1.0 - nu) * pi_u).sin().ln() - pi_u.sin().ln() / nu - r * w.ln())
}

pub fn sample_stable(p: StableParams, rng: &mut RandomSource) -> Result<f64> {
    sample_ln_stable(p, rng).map(f64::exp)
}

/// `ln T` for `T ~ ML(ν, θ)`, via `T = E^{1/ν} S_ν` with `E ~ Exp(θ)`.
///
/// Draws the exponential first; for `ν = 1` no stable variate is drawn.
pub fn sample_ln_ml(d: MlDistribution, rng: &mut RandomSource) -> Result<f64> {
    let d = MlDistribution::new(d.nu, d.theta)?;
    let ln_e = (rng.exponential() / d.theta).ln();
    if d.nu == 1.0 {
        return Ok(ln_e);
    }
    Ok(ln_e / d.nu + sample_ln_stable(StableParams { nu: d.nu }, rng)?)
}

pub fn sample_ml(d: MlDistribution, rng: &mut RandomSource) -> Result<f64> {
    sample_ln_ml(d, rng).map(f64::exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_streams_repeat() {
        let mut a = RandomSource::new(7, 3);
        let mut b = RandomSource::new(7, 3);
        for _ in 0..1000 {
            assert_eq!(a.uniform().to_bits(), b.uniform().to_bits());
        }
    }

    #[test]
    fn streams_do_not_share_a_prefix() {
        let first: Vec<f64> = (0..4).map(|s| RandomSource::new(1, s).uniform()).collect();
        for i in 0..first.len() {
            for j in 0..i {
                assert_ne!(first[i], first[j]);
            }
        }
        let mut a = RandomSource::new(1, 0);
        let mut b = RandomSource::new(1, 1);
        let xa: Vec<f64> = (0..64).map(|_| a.uniform()).collect();
        let xb: Vec<f64> = (0..64).map(|_| b.uniform()).collect();
        assert!(xa.iter().all(|x| !xb.contains(x)));
    }

    #[test]
    fn pinned_first_values() {
        // guards the documented generator choice against silent changes
        let mut r = RandomSource::new(42, 0);
        let u = r.uniform();
        let mut again = ChaCha20Rng::seed_from_u64(42);
        again.set_stream(0);
        let v: f64 = Open01.sample(&mut again);
        assert_eq!(u, v);
    }

    #[test]
    fn uniform_is_open_and_index_in_range() {
        let mut r = RandomSource::new(0, 0);
        for _ in 0..100_000 {
            let u = r.uniform();
            assert!(u > 0.0 && u < 1.0);
            assert!(r.index(7) < 7);
        }
    }

    #[test]
    fn stable_rejects_bad_index() {
        let mut r = RandomSource::new(0, 0);
        assert!(sample_stable(StableParams { nu: 1.0 }, &mut r).is_err());
        assert!(sample_stable(StableParams { nu: 0.0 }, &mut r).is_err());
        assert!(StableParams::new(0.3).is_ok());
    }

    #[test]
    fn unit_index_shortcut_is_exponential() {
        let d = MlDistribution::new(1.0, 5.0).unwrap();
        let mut a = RandomSource::new(9, 0);
        let mut b = RandomSource::new(9, 0);
        let t = sample_ml(d, &mut a).unwrap();
        assert!((t - b.exponential() / 5.0).abs() < 1e-15 * t);
    }

    #[test]
    fn stable_median_near_one_close_to_unit_index() {
        let mut r = RandomSource::new(5, 0);
        let xs: Vec<f64> = (0..20_001)
            .map(|_| sample_stable(StableParams { nu: 0.999 }, &mut r).unwrap())
            .collect();
        let m = crate::numeric::median(&xs);
        assert!((m - 1.0).abs() < 0.05, "{m}");
    }
}
