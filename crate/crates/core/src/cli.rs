//! Command-line front end. [`run`] returns the process exit code.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::dataset::{InputDataset, Interpretation, Summary};
use crate::error::{Error, Result};
use crate::estimation::{estimate, EstimateOptions, EstimateReport, ErrorVariance, Interval};
use crate::montecarlo::{self, Campaign, Format, MadKind, StudyConfig, StudyKind};
use crate::processes::{simulate, ProcessKind, ProcessType};
use crate::special::mittag_leffler;
use crate::variates::RandomSource;

pub const SEED_ENV: &str = "FRACBD_SEED";

#[derive(Debug, Parser)]
#[command(name = "fracbd", version, about = "Fractional Yule and death processes: simulation and estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the Mittag-Leffler function E_{delta,beta}(x).
    #[command(allow_negative_numbers = true)]
    MlEval { delta: f64, beta: f64, x: f64 },
    /// Simulate one sample path.
    Simulate(SimulateArgs),
    /// Estimate (nu, rate) from a file of observed times.
    Estimate(EstimateArgs),
    /// Monte Carlo studies.
    #[command(subcommand)]
    Mc(McCommand),
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, default_value = "yule")]
    process: ProcessType,
    #[arg(long)]
    nu: f64,
    #[arg(long)]
    rate: f64,
    /// Number of events (Yule) or observed deaths (default n0).
    #[arg(long)]
    n: Option<u64>,
    /// Initial population of a death process.
    #[arg(long)]
    n0: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for inter_times.csv and steps.csv (or path.json).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "inter-event-times")]
    interpretation: Interpretation,
    #[arg(long, default_value = "yule")]
    process: ProcessType,
    /// Initial population of a death process (default: number of intervals).
    #[arg(long)]
    n0: Option<u64>,
    #[arg(long, default_value_t = 1)]
    start_index: u64,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Bootstrap replicates; 0 disables the bootstrap interval.
    #[arg(long, default_value_t = 500)]
    bootstrap_b: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Error variance used by the LS intervals.
    #[arg(long, default_value = "ls", value_parser = parse_error_variance)]
    error_variance: ErrorVariance,
    /// Clip negative lower bounds of the intervals to zero.
    #[arg(long)]
    truncate: bool,
    /// Output directory for report.json and residuals.csv.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Format of the report printed on stdout: csv selects the plain table.
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum McCommand {
    /// Bias and dispersion of the point estimators.
    Point(McArgs),
    /// Coverage and width of the interval estimators.
    Interval(McArgs),
}

#[derive(Debug, Args)]
struct McArgs {
    /// Named campaign (`standard`).
    #[arg(long, conflicts_with_all = ["config", "nu", "rate"])]
    preset: Option<String>,
    /// Campaign file of key = value lines.
    #[arg(long, conflicts_with_all = ["nu", "rate"])]
    config: Option<PathBuf>,
    #[arg(long)]
    process: Option<ProcessType>,
    #[arg(long, requires = "rate")]
    nu: Option<f64>,
    #[arg(long, requires = "nu")]
    rate: Option<f64>,
    /// Sample sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    #[arg(long)]
    n0: Option<u64>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    bootstrap_b: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; results do not depend on this.
    #[arg(long, visible_alias = "streams")]
    jobs: Option<usize>,
    #[arg(long)]
    mad: Option<MadKind>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: Format,
}

fn parse_error_variance(s: &str) -> std::result::Result<ErrorVariance, String> {
    match s {
        "ls" => Ok(ErrorVariance::LsPlugIn),
        "res" => Ok(ErrorVariance::ResPlugIn),
        "residual" => Ok(ErrorVariance::Residual),
        _ => Err(format!("unknown error variance '{s}' (expected ls, res or residual)")),
    }
}

/// Resolves the seed from the flag, then the environment, then zero.
fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64> {
    match (flag, env) {
        (Some(s), _) => Ok(s),
        (None, Some(v)) => v
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("{SEED_ENV}='{v}' is not an unsigned 64-bit integer"))),
        (None, None) => Ok(0),
    }
}

/// Formats `v` with `digits` significant digits.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.*e}", digits - 1)
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(format!("cannot create {}: {e}", path.display())))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("cannot create directory {}: {e}", dir.display())))
}

fn to_json<T: Serialize, W: Write>(value: &T, mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn cmd_simulate(a: &SimulateArgs, env_seed: Option<&str>, out: &mut dyn Write) -> Result<()> {
    let seed = resolve_seed(a.seed, env_seed)?;
    let (process, events) = match a.process {
        ProcessType::Yule => {
            if a.n0.is_some() {
                return Err(Error::Input("--n0 applies to death processes only".into()));
            }
            let n = a.n.ok_or_else(|| Error::Input("--n is required for a Yule path".into()))?;
            (ProcessKind::yule(a.nu, a.rate)?, n)
        }
        kind => {
            let n0 = a.n0.ok_or_else(|| Error::Input("--n0 is required for a death process".into()))?;
            (ProcessKind::new(kind, a.nu, a.rate, n0)?, a.n.unwrap_or(n0))
        }
    };
    if events == 0 {
        return Err(Error::Input("the path needs at least one event".into()));
    }
    let path = simulate(&process, events, &mut RandomSource::new(seed, 0))?;
    match (&a.out, a.format) {
        (None, Format::Csv) => path.write_inter_times_csv(out)?,
        (None, Format::Json) => to_json(&path, out)?,
        (Some(dir), Format::Csv) => {
            ensure_dir(dir)?;
            let mut w = create(&dir.join("inter_times.csv"))?;
            path.write_inter_times_csv(&mut w)?;
            w.flush()?;
            let mut w = create(&dir.join("steps.csv"))?;
            path.write_step_csv(&mut w)?;
            w.flush()?;
        }
        (Some(dir), Format::Json) => {
            ensure_dir(dir)?;
            to_json(&path, create(&dir.join("path.json"))?)?;
        }
    }
    Ok(())
}

/// Everything `estimate` reports about one input file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateOutput {
    pub process: ProcessType,
    pub interpretation: Interpretation,
    pub start_index: u64,
    pub seed: u64,
    pub summary: Summary,
    pub report: EstimateReport,
}

fn interval_cell(iv: Option<Interval>) -> (String, String) {
    match iv {
        Some(iv) => (format_sig(iv.lo, 6), format_sig(iv.hi, 6)),
        None => ("n/a".into(), "n/a".into()),
    }
}

fn write_table(o: &EstimateOutput, w: &mut dyn Write) -> Result<()> {
    let s = &o.summary;
    let r = &o.report;
    writeln!(w, "input: {} values read as {}", s.count, o.interpretation)?;
    writeln!(w, "{:<8}{:>12}{:>12}{:>12}{:>12}{:>12}", "", "min", "median", "mean", "max", "sd")?;
    writeln!(
        w,
        "{:<8}{:>12}{:>12}{:>12}{:>12}{:>12}",
        "values",
        format_sig(s.min, 6),
        format_sig(s.median, 6),
        format_sig(s.mean, 6),
        format_sig(s.max, 6),
        format_sig(s.sd, 6)
    )?;
    writeln!(w)?;
    writeln!(w, "process {}, n = {}, alpha = {}", o.process, r.n, r.alpha)?;
    writeln!(w, "intercept {}  slope {}  sigma2_u {}", format_sig(r.intercept, 6), format_sig(r.slope, 6), format_sig(r.sigma2_u, 6))?;
    writeln!(w)?;
    writeln!(w, "{:<18}{:>12}{:>12}{:>12}", "estimator", "estimate", "lower", "upper")?;
    let rows = [
        ("nu (LS)", r.nu_ls, r.ci_nu_ls),
        ("rate (LS)", r.rate_ls, r.ci_rate_ls),
        ("nu (residual)", r.nu_res, r.ci_nu_res),
        ("rate (residual)", r.rate_res, r.ci_rate_res),
    ];
    for (name, est, iv) in rows {
        let (lo, hi) = interval_cell(iv);
        writeln!(w, "{name:<18}{:>12}{lo:>12}{hi:>12}", format_sig(est, 6))?;
    }
    if r.bootstrap_b > 0 {
        let (lo, hi) = interval_cell(r.ci_rate_boot);
        writeln!(w, "{:<18}{:>12}{lo:>12}{hi:>12}", "rate (bootstrap)", format_sig(r.rate_res, 6))?;
    }
    for warning in &r.warnings {
        writeln!(w, "warning: {warning}")?;
    }
    Ok(())
}

fn cmd_estimate(a: &EstimateArgs, env_seed: Option<&str>, out: &mut dyn Write) -> Result<()> {
    let seed = resolve_seed(a.seed, env_seed)?;
    if a.process == ProcessType::Yule && a.n0.is_some() {
        return Err(Error::Input("--n0 applies to death processes only".into()));
    }
    let data = InputDataset::read(&a.input, a.interpretation, a.start_index)?;
    let design = data.design(a.process, a.n0)?;
    let opts = EstimateOptions {
        alpha: a.alpha,
        bootstrap_b: a.bootstrap_b,
        error_variance: a.error_variance,
        truncate_at_zero: a.truncate,
    };
    let report = estimate(&design, &opts, &mut RandomSource::new(seed, 0))?;
    let output = EstimateOutput {
        process: a.process,
        interpretation: a.interpretation,
        start_index: a.start_index,
        seed,
        summary: data.summary(),
        report,
    };
    if let Some(dir) = &a.out {
        ensure_dir(dir)?;
        to_json(&output, create(&dir.join("report.json"))?)?;
        let fit = crate::estimation::ls_fit(&design)?;
        let mut w = create(&dir.join("residuals.csv"))?;
        fit.write_residual_csv(&design, &mut w)?;
        w.flush()?;
    }
    match a.format {
        Format::Csv => write_table(&output, out),
        Format::Json => to_json(&output, out),
    }
}

fn campaign(a: &McArgs, env_seed: Option<&str>) -> Result<Campaign> {
    let base = if let Some(name) = &a.preset {
        montecarlo::preset(name)?
    } else if let Some(path) = &a.config {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        montecarlo::parse_config(&text)?
    } else {
        let (nu, rate) = match (a.nu, a.rate) {
            (Some(nu), Some(rate)) => (nu, rate),
            _ => return Err(Error::Input("give --preset, --config, or both --nu and --rate".into())),
        };
        let n = a.n.clone().ok_or_else(|| Error::Input("--n is required with --nu/--rate".into()))?;
        Campaign { studies: vec![StudyConfig::new(a.process.unwrap_or(ProcessType::Yule), nu, rate, n)] }
    };
    // a seed from the file wins over the environment but not over --seed
    let seed = match (a.seed, env_seed, a.config.is_some()) {
        (Some(s), _, _) => Some(s),
        (None, _, true) => None,
        (None, env, false) => Some(resolve_seed(None, env)?),
    };
    Ok(base.map(|s| {
        if let Some(p) = a.process {
            s.process = p;
        }
        if let Some(n) = &a.n {
            s.n_list = n.clone();
        }
        if a.n0.is_some() {
            s.n0 = a.n0;
        }
        if let Some(v) = a.reps {
            s.reps = v;
        }
        if let Some(v) = a.alpha {
            s.alpha = v;
        }
        if let Some(v) = a.bootstrap_b {
            s.bootstrap_b = v;
        }
        if let Some(v) = seed {
            s.seed = v;
        }
        if let Some(v) = a.jobs {
            s.jobs = v;
        }
        if let Some(v) = a.mad {
            s.mad = v;
        }
    }))
}

fn cmd_mc(kind: StudyKind, a: &McArgs, env_seed: Option<&str>, out: &mut dyn Write) -> Result<()> {
    let c = campaign(a, env_seed)?;
    for s in &c.studies {
        s.validate(kind)?;
    }
    let results = c
        .studies
        .iter()
        .map(|s| montecarlo::run_study(kind, s))
        .collect::<Result<Vec<_>>>()?;
    match &a.out {
        Some(path) => {
            let mut w = create(path)?;
            montecarlo::summarize(&results, a.format, &mut w)?;
            w.flush()?;
            Ok(())
        }
        None => montecarlo::summarize(&results, a.format, out),
    }
}

fn dispatch(cli: Cli, env_seed: Option<&str>, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::MlEval { delta, beta, x } => {
            let v = mittag_leffler(delta, beta, x)?;
            writeln!(out, "{v}")?;
            Ok(())
        }
        Command::Simulate(a) => cmd_simulate(&a, env_seed, out),
        Command::Estimate(a) => cmd_estimate(&a, env_seed, out),
        Command::Mc(McCommand::Point(a)) => cmd_mc(StudyKind::Point, &a, env_seed, out),
        Command::Mc(McCommand::Interval(a)) => cmd_mc(StudyKind::Interval, &a, env_seed, out),
    }
}

/// Runs the command line `args` (including the program name) with an
/// explicit seed fallback, writing results to `out` and diagnostics to `err`.
pub fn run_with<I, T>(args: I, env_seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    match dispatch(cli, env_seed, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

/// [`run_with`] on the real environment and standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let env_seed = std::env::var(SEED_ENV).ok();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = run_with(args, env_seed.as_deref(), &mut out, &mut std::io::stderr());
    if out.flush().is_err() {
        return 1;
    }
    code
}
