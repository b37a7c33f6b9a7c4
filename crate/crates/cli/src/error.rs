use std::path::PathBuf;

use hurwitz_core::branch::{DatumError, HeartError};
use hurwitz_core::formulas::FormulaError;
use hurwitz_core::oracle::{CalibrationError, OracleError};
use hurwitz_core::partition::ParsePartitionError;
use hurwitz_core::witnesses::WitnessError;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISCREPANCY: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("--pi: {0}")]
    Partition(#[from] ParsePartitionError),
    #[error("--datum: {0}")]
    DatumJson(serde_json::Error),
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Heart(#[from] HeartError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("convention calibration: {0}")]
    Calibration(#[from] CalibrationError),
    #[error("cache {}: {source}", path.display())]
    Cache { path: PathBuf, source: std::io::Error },
    #[error("cache {} line {line}: {message}", path.display())]
    CacheFormat { path: PathBuf, line: usize, message: String },
    #[error("writing output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Oracle(e) | CliError::Calibration(CalibrationError::Oracle(e)) => oracle_code(e),
            CliError::Cache { .. } | CliError::CacheFormat { .. } | CliError::Output(_) => EXIT_IO,
            CliError::Calibration(_) => EXIT_DISCREPANCY,
            _ => EXIT_USAGE,
        }
    }
}

fn oracle_code(e: &OracleError) -> i32 {
    match e {
        OracleError::Infeasible { .. } | OracleError::HardLimit { .. } | OracleError::CentralizerTooLarge { .. } => {
            EXIT_INFEASIBLE
        }
        _ => EXIT_USAGE,
    }
}
