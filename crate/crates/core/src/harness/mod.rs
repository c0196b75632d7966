//! Experiment presets, the relative error metric, grid-refinement studies
//! and CSV output.

mod config;
mod convergence;
mod csv_out;
mod presets;

pub use config::{InitRule, InitialData, RunConfig};
pub use convergence::{convergence_study, relative_error, run_error, ConvergenceReport, ConvergenceRow};
pub use csv_out::{read_snapshot, snapshot_path, write_report, write_snapshot, write_trajectory};
pub use presets::{preset, PRESET_NAMES, TABLE1_DEFAULT_LEVEL};

use thiserror::Error;

use crate::model::ModelError;
use crate::riemann::OracleError;
use crate::schemes::SchemeError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("unknown preset '{name}'; valid presets: {valid}")]
    UnknownPreset { name: String, valid: String },
    #[error("reference solution is identically zero")]
    DegenerateReference,
    #[error("no exact solution is available for this initial data")]
    NoExactSolution,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("I/O error on {path}: {message}")]
    Io { path: String, message: String },
}
