//! Estimation under a non-linear rate schedule: theta_j = theta^j.
//!
//! cargo run --release --example general_rates

use fracbd::estimation::{estimate_general, NuRoute, RateFamily};
use fracbd::variates::{sample_ml, RandomSource};
use fracbd::MlDistribution;

fn main() -> fracbd::Result<()> {
    let (nu, theta) = (0.8, 1.05f64);
    let mut rng = RandomSource::new(5, 0);
    let times = (1..=400)
        .map(|j| sample_ml(MlDistribution::new(nu, theta.powi(j))?, &mut rng))
        .collect::<fracbd::Result<Vec<f64>>>()?;

    // ln theta_j = ln(theta) * j
    let g = estimate_general(RateFamily::Multiplicative, |j| j as f64, |m| Ok(m.exp()), &times, 0.05, NuRoute::Residual)?;
    println!("true nu = {nu}, theta = {theta}");
    println!("estimated nu = {:.4} {:?}", g.nu, g.ci_nu_res);
    println!("estimated theta = {:.4}", g.theta);
    Ok(())
}
