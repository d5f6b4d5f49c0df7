//! Runs a small campaign described by a key = value config and writes JSON.
//!
//! cargo run --release --example campaign

use fracbd::montecarlo::{parse_config, run_study, summarize, Format, StudyKind};

const CONFIG: &str = "
process = sublinear-death
pairs = 0.5:1 0.9:2
n = 40
n0 = 60
reps = 100
seed = 12
";

fn main() -> fracbd::Result<()> {
    let campaign = parse_config(CONFIG)?;
    let results = campaign
        .studies
        .iter()
        .map(|s| run_study(StudyKind::Point, s))
        .collect::<fracbd::Result<Vec<_>>>()?;
    summarize(&results, Format::Json, std::io::stdout())
}
