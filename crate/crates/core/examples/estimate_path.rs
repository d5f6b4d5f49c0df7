//! Simulates a fractional Yule path and recovers (nu, lambda) with point and
//! interval estimates.
//!
//! cargo run --release --example estimate_path

use fracbd::estimation::{build_design, estimate, EstimateOptions};
use fracbd::processes::simulate_yule;
use fracbd::variates::RandomSource;

fn main() -> fracbd::Result<()> {
    let mut rng = RandomSource::new(2024, 0);
    let path = simulate_yule(0.5, 0.5, 300, &mut rng)?;
    let design = build_design(&path)?;
    let report = estimate(&design, &EstimateOptions::default(), &mut rng)?;

    println!("true nu = 0.5, lambda = 0.5, n = {}", report.n);
    println!("nu   LS {:.4} {:?}", report.nu_ls, report.ci_nu_ls);
    println!("nu   residual {:.4} {:?}", report.nu_res, report.ci_nu_res);
    println!("rate LS {:.4} {:?}", report.rate_ls, report.ci_rate_ls);
    println!("rate residual {:.4} {:?}", report.rate_res, report.ci_rate_res);
    println!("rate bootstrap {:?}", report.ci_rate_boot);
    for w in &report.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
