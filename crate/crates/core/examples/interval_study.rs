//! Monte Carlo coverage and width of the interval estimators on a death process.
//!
//! cargo run --release --example interval_study

use fracbd::montecarlo::{interval_study, StudyConfig, INTERVAL_ESTIMATORS};
use fracbd::processes::ProcessType;

fn main() -> fracbd::Result<()> {
    let config = StudyConfig {
        reps: 200,
        bootstrap_b: 200,
        seed: 3,
        ..StudyConfig::new(ProcessType::LinearDeath, 0.75, 0.25, vec![50, 200])
    };
    let result = interval_study(&config)?;
    println!("{:<14}{:>6}{:>10}{:>10}{:>10}", "interval", "n", "coverage", "width", "failed");
    for n in &config.n_list {
        for name in INTERVAL_ESTIMATORS {
            let c = result.cell(name, *n).unwrap();
            println!(
                "{name:<14}{n:>6}{:>10.3}{:>10.4}{:>10}",
                c.coverage.unwrap_or(f64::NAN),
                c.mean_width.unwrap_or(f64::NAN),
                c.failures
            );
        }
    }
    Ok(())
}
