//! CSV, JSON and plain-text rendering of study results.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::StudyResult;
use crate::error::{Error, Result};
use crate::processes::ProcessType;

pub const CSV_HEADER: &str = "process,true_nu,true_rate,n,estimator,metric,value,reps,failures";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Input(format!("unknown format '{s}' (expected csv or json)"))),
        }
    }
}

/// One metric of one cell; the unit of the CSV and JSON outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub process: ProcessType,
    pub true_nu: f64,
    pub true_rate: f64,
    pub n: usize,
    pub estimator: String,
    pub metric: String,
    pub value: f64,
    pub reps: usize,
    pub failures: usize,
}

impl StudyResult {
    /// Flattens the cells into rows; metrics that are undefined are omitted.
    pub fn rows(&self) -> Vec<StudyRow> {
        let mut rows = Vec::new();
        for c in &self.cells {
            let metrics = [
                ("mean", c.mean),
                ("mad", c.mad),
                ("rf_percent", c.rf_percent),
                ("mean_lo", c.mean_lo),
                ("mean_hi", c.mean_hi),
                ("coverage", c.coverage),
                ("mean_width", c.mean_width),
            ];
            for (metric, value) in metrics {
                if let Some(value) = value.filter(|v| v.is_finite()) {
                    rows.push(StudyRow {
                        process: self.process,
                        true_nu: self.true_nu,
                        true_rate: self.true_rate,
                        n: c.n,
                        estimator: c.estimator.clone(),
                        metric: metric.to_string(),
                        value,
                        reps: c.reps,
                        failures: c.failures,
                    });
                }
            }
        }
        rows
    }
}

pub fn write_csv<W: Write>(rows: &[StudyRow], mut w: W) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            r.process, r.true_nu, r.true_rate, r.n, r.estimator, r.metric, r.value, r.reps, r.failures
        )?;
    }
    Ok(())
}

pub fn write_json<W: Write>(rows: &[StudyRow], mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, rows).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(w)?;
    Ok(())
}

pub fn read_json<R: Read>(r: R) -> Result<Vec<StudyRow>> {
    serde_json::from_reader(r).map_err(|e| Error::Input(format!("malformed study JSON: {e}")))
}

/// Writes every row of `results` in `format`.
pub fn summarize<W: Write>(results: &[StudyResult], format: Format, w: W) -> Result<()> {
    let rows: Vec<StudyRow> = results.iter().flat_map(|r| r.rows()).collect();
    match format {
        Format::Csv => write_csv(&rows, w),
        Format::Json => write_json(&rows, w),
    }
}
