//! Replicated simulation studies of the regression estimators.
//!
//! Replication `r` of every cell draws from stream `r` of the study seed, so
//! results do not depend on the number of worker threads.

mod config;
mod report;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimation::{
    build_design, ci_bootstrap_rate, ci_ls, ci_res, ls_fit, point_estimates, ErrorVariance, Interval, PointEstimates,
};
use crate::numeric::{mean, quantile_sorted};
use crate::processes::{simulate, ProcessKind, ProcessType};
use crate::variates::RandomSource;

pub use config::{parse_config, preset, Campaign, PRESET_PAIRS, PRESET_SIZES};
pub use report::{read_json, summarize, write_csv, write_json, Format, StudyRow, CSV_HEADER};

/// Smallest sample size accepted by interval studies.
pub const MIN_INTERVAL_N: usize = 15;

/// Consistency constant turning the median absolute deviation into a normal sd.
pub const MAD_SCALE: f64 = 1.482_602_218_505_602;

/// Dispersion measure reported as `mad`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum MadKind {
    /// `median |θ̂ - θ|`, unscaled.
    #[default]
    Truth,
    /// `1.4826 · median |θ̂ - median θ̂|`.
    Scaled,
}

impl std::str::FromStr for MadKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "truth" => Ok(MadKind::Truth),
            "scaled" => Ok(MadKind::Scaled),
            _ => Err(Error::Input(format!("unknown MAD kind '{s}' (expected truth or scaled)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StudyKind {
    Point,
    Interval,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub process: ProcessType,
    pub true_nu: f64,
    pub true_rate: f64,
    /// Initial population of death processes; `None` observes all `n` deaths.
    pub n0: Option<u64>,
    pub n_list: Vec<usize>,
    pub reps: usize,
    pub alpha: f64,
    pub bootstrap_b: usize,
    pub seed: u64,
    pub jobs: usize,
    pub mad: MadKind,
    pub error_variance: ErrorVariance,
}

impl StudyConfig {
    pub fn new(process: ProcessType, true_nu: f64, true_rate: f64, n_list: Vec<usize>) -> Self {
        Self {
            process,
            true_nu,
            true_rate,
            n0: None,
            n_list,
            reps: 1000,
            alpha: 0.05,
            bootstrap_b: 500,
            seed: 0,
            jobs: 1,
            mad: MadKind::Truth,
            error_variance: ErrorVariance::LsPlugIn,
        }
    }

    fn process_for(&self, n: usize) -> Result<ProcessKind> {
        let n0 = match self.process {
            ProcessType::Yule => 1,
            _ => self.n0.unwrap_or(n as u64),
        };
        ProcessKind::new(self.process, self.true_nu, self.true_rate, n0)
    }

    pub fn validate(&self, kind: StudyKind) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::domain("reps must be at least 1"));
        }
        if self.jobs == 0 {
            return Err(Error::domain("jobs must be at least 1"));
        }
        if self.n_list.is_empty() {
            return Err(Error::domain("no sample sizes given"));
        }
        let min_n = match kind {
            StudyKind::Point => 3,
            StudyKind::Interval => MIN_INTERVAL_N,
        };
        for &n in &self.n_list {
            if n < min_n {
                return Err(Error::domain(format!("sample size {n} is below the minimum {min_n}")));
            }
            let p = self.process_for(n)?;
            if p.kind.is_death() && n as u64 > p.n0 {
                return Err(Error::domain(format!("sample size {n} exceeds n0 = {}", p.n0)));
            }
        }
        if kind == StudyKind::Interval {
            if !(self.alpha > 0.0 && self.alpha < 1.0) {
                return Err(Error::domain(format!("alpha must lie in (0, 1), got {}", self.alpha)));
            }
            if self.bootstrap_b != 0 && self.bootstrap_b < 100 {
                return Err(Error::domain("bootstrap_b must be 0 (disabled) or at least 100"));
            }
        }
        Ok(())
    }
}

/// Aggregated metrics of one estimator at one sample size. Point cells fill
/// `mean`, `mad` and `rf_percent`; interval cells the remaining fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Cell {
    pub estimator: String,
    pub n: usize,
    pub mean: Option<f64>,
    pub mad: Option<f64>,
    pub rf_percent: Option<f64>,
    pub mean_lo: Option<f64>,
    pub mean_hi: Option<f64>,
    pub coverage: Option<f64>,
    pub mean_width: Option<f64>,
    pub reps: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyResult {
    pub process: ProcessType,
    pub true_nu: f64,
    pub true_rate: f64,
    pub cells: Vec<Cell>,
}

impl StudyResult {
    pub fn cell(&self, estimator: &str, n: usize) -> Option<&Cell> {
        self.cells.iter().find(|c| c.estimator == estimator && c.n == n)
    }
}

pub const POINT_ESTIMATORS: [&str; 4] = ["nu_ls", "rate_ls", "nu_res", "rate_res"];
pub const INTERVAL_ESTIMATORS: [&str; 5] = ["ci_nu_ls", "ci_rate_ls", "ci_nu_res", "ci_rate_res", "ci_rate_boot"];

fn run_reps<T, F>(c: &StudyConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut RandomSource) -> T + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(c.jobs)
        .build()
        .map_err(|e| Error::Numerical(format!("cannot start worker threads: {e}")))?;
    Ok(pool.install(|| {
        (0..c.reps as u64)
            .into_par_iter()
            .map(|r| f(&mut RandomSource::new(c.seed, r)))
            .collect()
    }))
}

fn simulate_estimates(process: &ProcessKind, n: usize, rng: &mut RandomSource) -> Result<PointEstimates> {
    let path = simulate(process, n as u64, rng)?;
    point_estimates(&ls_fit(&build_design(&path)?)?)
}

/// Median absolute deviation of `values` about `truth` or, scaled, about their median.
pub fn mad(values: &[f64], truth: f64, kind: MadKind) -> f64 {
    let centre = match kind {
        MadKind::Truth => truth,
        MadKind::Scaled => {
            let mut s = values.to_vec();
            s.sort_by(f64::total_cmp);
            quantile_sorted(&s, 0.5)
        }
    };
    let mut dev: Vec<f64> = values.iter().map(|v| (v - centre).abs()).collect();
    dev.sort_by(f64::total_cmp);
    let m = quantile_sorted(&dev, 0.5);
    match kind {
        MadKind::Truth => m,
        MadKind::Scaled => MAD_SCALE * m,
    }
}

/// Mean, MAD and relative fluctuation of each point estimator.
pub fn point_study(c: &StudyConfig) -> Result<StudyResult> {
    c.validate(StudyKind::Point)?;
    let mut cells = Vec::new();
    for &n in &c.n_list {
        let process = c.process_for(n)?;
        let outcomes = run_reps(c, |rng| simulate_estimates(&process, n, rng).ok())?;
        for (k, name) in POINT_ESTIMATORS.iter().enumerate() {
            let truth = if k % 2 == 0 { c.true_nu } else { c.true_rate };
            let values: Vec<f64> = outcomes
                .iter()
                .flatten()
                .map(|p| [p.nu_ls, p.rate_ls, p.nu_res, p.rate_res][k])
                .filter(|v| v.is_finite())
                .collect();
            let mut cell = Cell {
                estimator: name.to_string(),
                n,
                reps: c.reps,
                failures: c.reps - values.len(),
                ..Default::default()
            };
            if !values.is_empty() {
                let m = mean(&values);
                let d = mad(&values, truth, c.mad);
                cell.mean = Some(m);
                cell.mad = Some(d);
                cell.rf_percent = (m != 0.0).then(|| 100.0 * d / m);
            }
            cells.push(cell);
        }
    }
    Ok(StudyResult { process: c.process, true_nu: c.true_nu, true_rate: c.true_rate, cells })
}

fn simulate_intervals(c: &StudyConfig, process: &ProcessKind, n: usize, rng: &mut RandomSource) -> [Option<Interval>; 5] {
    let run = |rng: &mut RandomSource| -> Result<[Option<Interval>; 5]> {
        let path = simulate(process, n as u64, rng)?;
        let d = build_design(&path)?;
        let fit = ls_fit(&d)?;
        let (a, b) = ci_ls(&fit, c.alpha, c.error_variance)?;
        let (e, f) = ci_res(&fit, c.alpha)?;
        let boot = if c.bootstrap_b > 0 {
            ci_bootstrap_rate(&fit, &d, c.alpha, c.bootstrap_b, rng).ok()
        } else {
            None
        };
        Ok([a, b, e, f, boot])
    };
    run(rng).unwrap_or([None; 5])
}

/// Mean bounds, coverage and mean width of each interval estimator. Every
/// method is applied to the same simulated path within a replication.
pub fn interval_study(c: &StudyConfig) -> Result<StudyResult> {
    c.validate(StudyKind::Interval)?;
    let mut cells = Vec::new();
    for &n in &c.n_list {
        let process = c.process_for(n)?;
        let outcomes = run_reps(c, |rng| simulate_intervals(c, &process, n, rng))?;
        for (k, name) in INTERVAL_ESTIMATORS.iter().enumerate() {
            if k == 4 && c.bootstrap_b == 0 {
                continue;
            }
            let truth = if k % 2 == 0 && k < 4 { c.true_nu } else { c.true_rate };
            let ivs: Vec<Interval> = outcomes
                .iter()
                .filter_map(|o| o[k])
                .filter(|iv| iv.lo.is_finite() && iv.hi.is_finite())
                .collect();
            let mut cell = Cell {
                estimator: name.to_string(),
                n,
                reps: c.reps,
                failures: c.reps - ivs.len(),
                ..Default::default()
            };
            if !ivs.is_empty() {
                let lo: Vec<f64> = ivs.iter().map(|iv| iv.lo).collect();
                let hi: Vec<f64> = ivs.iter().map(|iv| iv.hi).collect();
                let w: Vec<f64> = ivs.iter().map(|iv| iv.width()).collect();
                cell.mean_lo = Some(mean(&lo));
                cell.mean_hi = Some(mean(&hi));
                cell.mean_width = Some(mean(&w));
                cell.coverage = Some(ivs.iter().filter(|iv| iv.contains(truth)).count() as f64 / ivs.len() as f64);
            }
            cells.push(cell);
        }
    }
    Ok(StudyResult { process: c.process, true_nu: c.true_nu, true_rate: c.true_rate, cells })
}

pub fn run_study(kind: StudyKind, c: &StudyConfig) -> Result<StudyResult> {
    match kind {
        StudyKind::Point => point_study(c),
        StudyKind::Interval => interval_study(c),
    }
}
