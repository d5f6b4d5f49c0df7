//! Study campaigns: the built-in grid and flat `key = value` config files.

use super::{MadKind, StudyConfig};
use crate::error::{Error, Result};
use crate::estimation::ErrorVariance;
use crate::processes::ProcessType;

/// `(ν, λ)` pairs of the standard grid.
pub const PRESET_PAIRS: [(f64, f64); 5] = [(0.1, 1.0), (0.25, 0.1), (0.5, 0.5), (0.75, 0.25), (0.95, 5.0)];
pub const PRESET_SIZES: [usize; 5] = [15, 30, 100, 500, 1000];

/// A list of studies sharing everything but the true parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Campaign {
    pub studies: Vec<StudyConfig>,
}

impl Campaign {
    pub fn from_pairs(template: &StudyConfig, pairs: &[(f64, f64)]) -> Self {
        let studies = pairs
            .iter()
            .map(|&(true_nu, true_rate)| StudyConfig { true_nu, true_rate, ..template.clone() })
            .collect();
        Campaign { studies }
    }

    /// Applies `f` to every study, for command-line overrides.
    pub fn map(mut self, f: impl Fn(&mut StudyConfig)) -> Self {
        self.studies.iter_mut().for_each(f);
        self
    }
}

/// Named campaigns. `standard` is the five-pair Yule grid at sizes 15 to 1000.
pub fn preset(name: &str) -> Result<Campaign> {
    match name {
        "standard" => {
            let template = StudyConfig::new(ProcessType::Yule, 0.5, 0.5, PRESET_SIZES.to_vec());
            Ok(Campaign::from_pairs(&template, &PRESET_PAIRS))
        }
        _ => Err(Error::Input(format!("unknown preset '{name}' (available: standard)"))),
    }
}

fn list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
    v.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::Input(format!("{key}: cannot parse '{s}'"))))
        .collect()
}

fn one<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Input(format!("{key}: cannot parse '{v}'")))
}

/// Parses a campaign from `key = value` lines.
///
/// Keys: `preset`, `process`, `nu`, `rate`, `pairs` (`ν:λ` list), `n` (list),
/// `n0`, `reps`, `alpha`, `bootstrap_b`, `seed`, `jobs`, `mad`
/// (`truth`|`scaled`), `error_variance` (`ls`|`res`|`residual`). A preset
/// supplies defaults that later keys override.
pub fn parse_config(text: &str) -> Result<Campaign> {
    let mut template = StudyConfig::new(ProcessType::Yule, f64::NAN, f64::NAN, PRESET_SIZES.to_vec());
    let mut pairs: Option<Vec<(f64, f64)>> = None;
    let (mut nu, mut rate) = (None, None);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| Error::Input(format!("line {}: expected key = value", lineno + 1)))?;
        match key {
            "preset" => {
                let p = preset(value)?;
                template = p.studies[0].clone();
                pairs = Some(p.studies.iter().map(|s| (s.true_nu, s.true_rate)).collect());
            }
            "process" => template.process = one(key, value)?,
            "nu" => nu = Some(one(key, value)?),
            "rate" => rate = Some(one(key, value)?),
            "pairs" => {
                let parsed = value
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|p| {
                        let (a, b) = p
                            .split_once(':')
                            .ok_or_else(|| Error::Input(format!("pairs: expected nu:rate, got '{p}'")))?;
                        Ok((one("pairs", a)?, one("pairs", b)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                pairs = Some(parsed);
            }
            "n" | "sizes" => template.n_list = list(key, value)?,
            "n0" => template.n0 = Some(one(key, value)?),
            "reps" => template.reps = one(key, value)?,
            "alpha" => template.alpha = one(key, value)?,
            "bootstrap_b" => template.bootstrap_b = one(key, value)?,
            "seed" => template.seed = one(key, value)?,
            "jobs" => template.jobs = one(key, value)?,
            "mad" => template.mad = value.parse::<MadKind>()?,
            "error_variance" => {
                template.error_variance = match value {
                    "ls" => ErrorVariance::LsPlugIn,
                    "res" => ErrorVariance::ResPlugIn,
                    "residual" => ErrorVariance::Residual,
                    _ => return Err(Error::Input(format!("error_variance: unknown value '{value}'"))),
                }
            }
            _ => return Err(Error::Input(format!("line {}: unknown key '{key}'", lineno + 1))),
        }
    }
    let pairs = match (nu, rate, pairs) {
        (Some(nu), Some(rate), _) => vec![(nu, rate)],
        (None, None, Some(p)) => p,
        (None, None, None) => return Err(Error::Input("config sets neither nu/rate, pairs nor a preset".into())),
        _ => return Err(Error::Input("nu and rate must be given together".into())),
    };
    Ok(Campaign::from_pairs(&template, &pairs))
}
