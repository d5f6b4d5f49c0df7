//! Monte Carlo bias and dispersion of the point estimators at one (nu, lambda).
//!
//! cargo run --release --example point_study

use fracbd::montecarlo::{point_study, summarize, Format, MadKind, StudyConfig};
use fracbd::processes::ProcessType;

fn main() -> fracbd::Result<()> {
    let config = StudyConfig {
        reps: 200,
        seed: 1,
        jobs: 4,
        mad: MadKind::Truth,
        ..StudyConfig::new(ProcessType::Yule, 0.5, 0.5, vec![30, 100, 500])
    };
    let result = point_study(&config)?;
    for n in &config.n_list {
        let c = result.cell("nu_res", *n).unwrap();
        println!("n = {n:>4}: mean nu_res {:.4}, MAD {:.4}", c.mean.unwrap(), c.mad.unwrap());
    }
    summarize(&[result], Format::Csv, std::io::stdout())
}
