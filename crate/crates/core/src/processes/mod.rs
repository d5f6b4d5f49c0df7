//! The three fractional processes: rate schedules, sample paths and exact analytics.

mod analytics;
mod chain;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{check_nu, MlDistribution};
use crate::variates::{sample_ml, RandomSource};

pub use analytics::{
    death_pmf, death_pmf_table, inter_event_pdf, linear_death_mean, linear_death_var, sublinear_death_mean,
    sublinear_death_var, yule_mean, yule_pmf, yule_pmf_table, yule_var, YULE_TABLE_MAX, YULE_TABLE_TOLERANCE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProcessType {
    /// Pure birth from one progenitor, rates `λ i`.
    Yule,
    /// Pure death, rates `μ (n0 - k)` after `k` deaths.
    LinearDeath,
    /// Pure death, rates `μ (k + 1)` after `k` deaths.
    SublinearDeath,
}

impl ProcessType {
    pub const ALL: [ProcessType; 3] = [ProcessType::Yule, ProcessType::LinearDeath, ProcessType::SublinearDeath];

    pub fn name(self) -> &'static str {
        match self {
            ProcessType::Yule => "yule",
            ProcessType::LinearDeath => "linear-death",
            ProcessType::SublinearDeath => "sublinear-death",
        }
    }

    pub fn is_death(self) -> bool {
        !matches!(self, ProcessType::Yule)
    }
}

impl fmt::Display for ProcessType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProcessType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "yule" => Ok(ProcessType::Yule),
            "linear-death" | "linear" => Ok(ProcessType::LinearDeath),
            "sublinear-death" | "sublinear" => Ok(ProcessType::SublinearDeath),
            other => Err(Error::Input(format!(
                "unknown process '{other}' (expected yule, linear-death or sublinear-death)"
            ))),
        }
    }
}

/// A process together with its parameters.
///
/// `rate` is λ for the Yule process and μ for the death processes. `n0` is the
/// initial population; it is 1 for the Yule process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProcessKind {
    pub kind: ProcessType,
    pub nu: f64,
    pub rate: f64,
    pub n0: u64,
}

impl ProcessKind {
    pub fn new(kind: ProcessType, nu: f64, rate: f64, n0: u64) -> Result<Self> {
        check_nu(nu)?;
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::domain(format!("rate must be positive and finite, got {rate}")));
        }
        match kind {
            ProcessType::Yule if n0 != 1 => {
                Err(Error::domain(format!("the Yule process starts from one progenitor, got n0 = {n0}")))
            }
            _ if n0 == 0 => Err(Error::domain("initial population must be positive")),
            _ => Ok(Self { kind, nu, rate, n0 }),
        }
    }

    pub fn yule(nu: f64, lambda: f64) -> Result<Self> {
        Self::new(ProcessType::Yule, nu, lambda, 1)
    }

    pub fn linear_death(nu: f64, mu: f64, n0: u64) -> Result<Self> {
        Self::new(ProcessType::LinearDeath, nu, mu, n0)
    }

    pub fn sublinear_death(nu: f64, mu: f64, n0: u64) -> Result<Self> {
        Self::new(ProcessType::SublinearDeath, nu, mu, n0)
    }

    /// Multiplier of `rate` for the `j`-th inter-event time (0-based).
    pub fn rate_factor(&self, j: u64) -> f64 {
        match self.kind {
            ProcessType::Yule => (j + 1) as f64,
            ProcessType::LinearDeath => (self.n0 - j) as f64,
            ProcessType::SublinearDeath => (j + 1) as f64,
        }
    }

    /// Law of the `j`-th inter-event time (0-based).
    pub fn inter_event_law(&self, j: u64) -> Result<MlDistribution> {
        if self.kind.is_death() && j >= self.n0 {
            return Err(Error::domain(format!("a death path has only {} inter-event times", self.n0)));
        }
        MlDistribution::new(self.nu, self.rate * self.rate_factor(j))
    }

    /// Population before any event.
    pub fn initial_population(&self) -> u64 {
        self.n0
    }
}

/// One simulated trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePath {
    pub process: ProcessKind,
    pub inter_times: Vec<f64>,
    pub event_times: Vec<f64>,
}

impl SamplePath {
    pub fn from_inter_times(process: ProcessKind, inter_times: Vec<f64>) -> Self {
        let mut acc = 0.0;
        let event_times = inter_times
            .iter()
            .map(|t| {
                acc += t;
                acc
            })
            .collect();
        Self { process, inter_times, event_times }
    }

    pub fn len(&self) -> usize {
        self.inter_times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inter_times.is_empty()
    }

    /// Population size at time `t`, counting events at `t` as having happened.
    pub fn population_at(&self, t: f64) -> u64 {
        let events = self.event_times.partition_point(|&e| e <= t) as u64;
        match self.process.kind {
            ProcessType::Yule => 1 + events,
            _ => self.process.n0 - events,
        }
    }

    /// `(event_time, population)` pairs starting with the initial state at time 0.
    pub fn step_function(&self) -> Vec<(f64, u64)> {
        let n0 = self.process.n0;
        std::iter::once((0.0, n0))
            .chain(self.event_times.iter().enumerate().map(|(j, &t)| {
                let pop = match self.process.kind {
                    ProcessType::Yule => n0 + 1 + j as u64,
                    _ => n0 - 1 - j as u64,
                };
                (t, pop)
            }))
            .collect()
    }

    pub fn write_step_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "event_time,population")?;
        for (t, p) in self.step_function() {
            writeln!(w, "{t},{p}")?;
        }
        Ok(())
    }

    pub fn write_inter_times_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "index,rate,inter_time,event_time")?;
        for (j, (dt, t)) in self.inter_times.iter().zip(&self.event_times).enumerate() {
            let theta = self.process.rate * self.process.rate_factor(j as u64);
            writeln!(w, "{},{theta},{dt},{t}", j + 1)?;
        }
        Ok(())
    }
}

/// Draws `n_events` inter-event times from the schedule of `process`, in order.
pub fn simulate(process: &ProcessKind, n_events: u64, rng: &mut RandomSource) -> Result<SamplePath> {
    let process = ProcessKind::new(process.kind, process.nu, process.rate, process.n0)?;
    if process.kind.is_death() && n_events > process.n0 {
        return Err(Error::domain(format!(
            "cannot observe {n_events} deaths from an initial population of {}",
            process.n0
        )));
    }
    let inter = (0..n_events)
        .map(|j| sample_ml(process.inter_event_law(j)?, rng))
        .collect::<Result<Vec<_>>>()?;
    Ok(SamplePath::from_inter_times(process, inter))
}

/// Yule path observed up to its `n_events`-th birth.
pub fn simulate_yule(nu: f64, lambda: f64, n_events: u64, rng: &mut RandomSource) -> Result<SamplePath> {
    if n_events == 0 {
        return Err(Error::domain("a Yule path needs at least one event"));
    }
    simulate(&ProcessKind::yule(nu, lambda)?, n_events, rng)
}

/// Yule path observed on `[0, horizon]`; stops early after `max_events` births.
pub fn simulate_yule_until(
    nu: f64,
    lambda: f64,
    horizon: f64,
    max_events: u64,
    rng: &mut RandomSource,
) -> Result<SamplePath> {
    let process = ProcessKind::yule(nu, lambda)?;
    if !(horizon >= 0.0) {
        return Err(Error::domain(format!("horizon must be non-negative, got {horizon}")));
    }
    let mut inter = Vec::new();
    let mut clock = 0.0;
    for j in 0..max_events {
        let dt = sample_ml(process.inter_event_law(j)?, rng)?;
        clock += dt;
        if clock > horizon {
            break;
        }
        inter.push(dt);
    }
    Ok(SamplePath::from_inter_times(process, inter))
}

/// Full linear-death path to extinction.
pub fn simulate_linear_death(nu: f64, mu: f64, n0: u64, rng: &mut RandomSource) -> Result<SamplePath> {
    simulate(&ProcessKind::linear_death(nu, mu, n0)?, n0, rng)
}

/// Full sublinear-death path to extinction.
pub fn simulate_sublinear_death(nu: f64, mu: f64, n0: u64, rng: &mut RandomSource) -> Result<SamplePath> {
    simulate(&ProcessKind::sublinear_death(nu, mu, n0)?, n0, rng)
}
