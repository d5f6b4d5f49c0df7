//! Draws Mittag-Leffler and one-sided stable variates and compares the
//! empirical log-moments with their exact values.
//!
//! cargo run --release --example sample_variates

use fracbd::estimation::error_variance;
use fracbd::numeric::{mean, sample_variance};
use fracbd::variates::{sample_ln_ml, sample_stable, RandomSource, StableParams};
use fracbd::{MlDistribution, EULER_GAMMA};

fn main() -> fracbd::Result<()> {
    let mut rng = RandomSource::new(42, 0);
    let (nu, theta) = (0.6, 1.5);
    let law = MlDistribution::new(nu, theta)?;
    let logs: Vec<f64> = (0..200_000).map(|_| sample_ln_ml(law, &mut rng)).collect::<fracbd::Result<_>>()?;
    println!("ln T, nu = {nu}, theta = {theta}");
    println!("  mean     {:.5}  exact {:.5}", mean(&logs), -theta.ln() / nu - EULER_GAMMA);
    println!("  variance {:.5}  exact {:.5}", sample_variance(&logs), error_variance(nu));

    // E[exp(-s S)] = exp(-s^nu)
    let p = StableParams::new(nu)?;
    let s: Vec<f64> = (0..200_000).map(|_| sample_stable(p, &mut rng)).collect::<fracbd::Result<_>>()?;
    for x in [0.5, 1.0, 2.0] {
        let lt = mean(&s.iter().map(|v| (-x * v).exp()).collect::<Vec<_>>());
        println!("Laplace transform at {x}: {lt:.5}  exact {:.5}", (-f64::powf(x, nu)).exp());
    }
    Ok(())
}
