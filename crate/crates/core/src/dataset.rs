//! Ingestion of externally observed times.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimation::{design_for, RegressionData};
use crate::numeric::{mean, median, sample_variance};
use crate::processes::ProcessType;

/// How the numbers of an input file relate to the process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Interpretation {
    /// Waiting times between consecutive events, in order.
    #[default]
    InterEventTimes,
    /// Event times measured from the start of observation.
    EventTimes,
    /// Node ages measured back from the present; the oldest is the first split.
    BranchingTimes,
}

impl Interpretation {
    pub const ALL: [Interpretation; 3] =
        [Interpretation::InterEventTimes, Interpretation::EventTimes, Interpretation::BranchingTimes];

    pub fn name(self) -> &'static str {
        match self {
            Interpretation::InterEventTimes => "inter-event-times",
            Interpretation::EventTimes => "event-times",
            Interpretation::BranchingTimes => "branching-times",
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Interpretation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|i| i.name() == s).ok_or_else(|| {
            Error::Input(format!(
                "unknown interpretation '{s}' (expected inter-event-times, event-times or branching-times)"
            ))
        })
    }
}

/// Descriptive statistics of the raw input values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub min: f64,
    pub median: f64,
    pub mean: f64,
    pub max: f64,
    /// Sample standard deviation (divisor `n - 1`).
    pub sd: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDataset {
    pub values: Vec<f64>,
    pub interpretation: Interpretation,
    /// Population size during the first observed interval of a Yule design.
    pub start_index: u64,
}

impl InputDataset {
    pub fn new(values: Vec<f64>, interpretation: Interpretation, start_index: u64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Input("the input contains no values".into()));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !(**v > 0.0 && v.is_finite())) {
            return Err(Error::Input(format!(
                "value {} is {v}; every time must be positive and finite",
                i + 1
            )));
        }
        if start_index == 0 {
            return Err(Error::Input("start index must be at least 1".into()));
        }
        Ok(Self { values, interpretation, start_index })
    }

    /// Parses one value per line, or a single-column CSV with an optional
    /// header. Commas and whitespace both separate values; `#` starts a comment.
    pub fn parse(text: &str, interpretation: Interpretation, start_index: u64) -> Result<Self> {
        Self::new(parse_values(text)?, interpretation, start_index)
    }

    pub fn read(path: &Path, interpretation: Interpretation, start_index: u64) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, interpretation, start_index)
    }

    pub fn summary(&self) -> Summary {
        let mut sorted = self.values.clone();
        sorted.sort_by(f64::total_cmp);
        let sd = if sorted.len() > 1 { sample_variance(&sorted).sqrt() } else { 0.0 };
        Summary {
            count: sorted.len(),
            min: sorted[0],
            median: median(&sorted),
            mean: mean(&sorted),
            max: sorted[sorted.len() - 1],
            sd,
        }
    }

    /// Converts the values to inter-event times in event order.
    ///
    /// Event times are sorted ascending and differenced from zero. Branching
    /// times are sorted descending and differenced, so `m` node ages yield
    /// `m - 1` intervals.
    pub fn inter_times(&self) -> Result<Vec<f64>> {
        let mut v = self.values.clone();
        let times = match self.interpretation {
            Interpretation::InterEventTimes => v,
            Interpretation::EventTimes => {
                v.sort_by(f64::total_cmp);
                let mut prev = 0.0;
                v.into_iter()
                    .map(|t| {
                        let d = t - prev;
                        prev = t;
                        d
                    })
                    .collect()
            }
            Interpretation::BranchingTimes => {
                v.sort_by(|a, b| b.total_cmp(a));
                v.windows(2).map(|w| w[0] - w[1]).collect()
            }
        };
        if let Some(i) = times.iter().position(|&t| t <= 0.0) {
            return Err(Error::Input(format!(
                "tied times produce a zero interval at position {}; ln(0) is undefined",
                i + 1
            )));
        }
        Ok(times)
    }

    /// Regression design for `process`; `n0` is ignored for Yule.
    pub fn design(&self, process: ProcessType, n0: Option<u64>) -> Result<RegressionData> {
        let times = self.inter_times()?;
        let n0 = n0.unwrap_or(times.len() as u64);
        design_for(process, &times, self.start_index, n0)
    }
}

fn parse_values(text: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    let mut seen_data = false;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> =
            line.split(|c: char| c == ',' || c == ';' || c.is_whitespace()).filter(|f| !f.is_empty()).collect();
        if fields.is_empty() {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = fields.iter().map(|f| f.parse::<f64>()).collect();
        match parsed {
            Ok(v) => {
                seen_data = true;
                values.extend(v);
            }
            Err(_) if !seen_data => {
                // header line
                seen_data = true;
            }
            Err(_) => {
                return Err(Error::Input(format!("line {}: cannot parse '{}' as a number", lineno + 1, line.trim())));
            }
        }
    }
    Ok(values)
}
