#![allow(clippy::neg_cmp_op_on_partial_ord)]
//! Simulation, moments and log-regression inference for fractional Yule and
//! fractional death processes.

pub mod cli;
pub mod dataset;
pub mod error;
pub mod estimation;
pub mod montecarlo;
pub mod numeric;
pub mod special;
pub mod processes;
pub mod variates;

pub use error::{Error, Result};
pub use special::{ml, ml_cdf, ml_pdf, ml_survival, mittag_leffler, MlDistribution, MlParams};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
