//! Reads node ages of a reconstructed tree and fits the fractional Yule model.
//!
//! cargo run --release --example estimate_file -- ages.txt [start_index]
//!
//! Without arguments a small built-in list is used.

use fracbd::dataset::{InputDataset, Interpretation};
use fracbd::estimation::{estimate, EstimateOptions};
use fracbd::processes::ProcessType;
use fracbd::variates::RandomSource;

const AGES: &str = "age\n12.1\n9.8\n7.45\n6.0\n4.2\n3.9\n2.5\n1.7\n1.1\n0.8\n0.45\n0.3\n0.2\n0.1\n";

fn main() -> fracbd::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next();
    let start: u64 = args.next().map(|s| s.parse().expect("start index")).unwrap_or(1);
    let data = match &path {
        Some(p) => InputDataset::read(p.as_ref(), Interpretation::BranchingTimes, start)?,
        None => InputDataset::parse(AGES, Interpretation::BranchingTimes, start)?,
    };
    let s = data.summary();
    println!("{} ages: min {:.3} median {:.3} mean {:.3} max {:.3} sd {:.3}", s.count, s.min, s.median, s.mean, s.max, s.sd);

    let design = data.design(ProcessType::Yule, None)?;
    let report = estimate(&design, &EstimateOptions::default(), &mut RandomSource::new(1, 0))?;
    println!("nu_ls {:.3} lambda_ls {:.3}", report.nu_ls, report.rate_ls);
    println!("nu_res {:.3} lambda_res {:.3}", report.nu_res, report.rate_res);
    println!("nu_res interval {:?}", report.ci_nu_res);
    Ok(())
}
