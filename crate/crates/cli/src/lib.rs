//! Library side of the `hurwitz` command: configuration, the four commands
//! and their renderers.

mod args;
mod cache;
mod check;
mod count;
mod error;
mod sweep;
mod table;

use std::path::PathBuf;

use hurwitz_core::branch::{heart_second_partition, make_heart, BranchDatum, HeartParams};
use hurwitz_core::oracle::{auto_convention, OracleOptions, WeakConvention, DEFAULT_MAX_DEGREE};
use hurwitz_core::partition::{parse_partition, Partition};
use serde::{Deserialize, Serialize};

pub use args::{parse_args, Format, Method};
pub use cache::{Cache, CacheEntry, CACHE_VERSION};
pub use check::{cmd_check, CheckReport};
pub use count::{cmd_count, CountResult, IntermediateOut, PathValue, WitnessOut};
pub use error::{CliError, EXIT_DISCREPANCY, EXIT_INFEASIBLE, EXIT_IO, EXIT_OK, EXIT_USAGE};
pub use sweep::{cmd_sweep, SweepReport, SweepRow};
pub use table::{cmd_table, table1_rows, TableRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Count,
    Table(u32),
    Sweep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConventionMode {
    /// Calibrate against the built-in reference suite.
    Auto,
    Fixed(WeakConvention),
}

/// How a datum was given on the command line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DatumSpec {
    pub g: Option<usize>,
    pub h: Option<usize>,
    pub k: Option<usize>,
    pub pi: Option<String>,
    pub json: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub datum: DatumSpec,
    pub method: Method,
    pub convention: ConventionMode,
    pub max_d: Option<usize>,
    pub threads: Option<usize>,
    pub format: Format,
    pub cache: Option<PathBuf>,
    pub force: bool,
    pub only_coincident: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            datum: DatumSpec::default(),
            method: Method::All,
            convention: ConventionMode::Auto,
            max_d: None,
            threads: None,
            format: Format::Text,
            cache: None,
            force: false,
            only_coincident: false,
        }
    }

    pub fn oracle_options(&self, max_degree: usize) -> OracleOptions {
        OracleOptions {
            threads: self.threads,
            max_degree,
            slots: None,
        }
    }

    fn oracle_bound(&self) -> usize {
        self.max_d.unwrap_or(DEFAULT_MAX_DEGREE)
    }
}

/// Rendered output plus the number of disagreements found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub output: String,
    pub discrepancies: usize,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.discrepancies > 0 {
            EXIT_DISCREPANCY
        } else {
            EXIT_OK
        }
    }
}

/// The convention in effect and how it was chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionInfo {
    pub name: String,
    pub mode: String,
    pub candidates: Vec<String>,
    pub tie_break: Option<String>,
}

impl ConventionInfo {
    pub fn convention(&self) -> WeakConvention {
        WeakConvention::parse(&self.name).expect("recorded conventions are valid")
    }
}

pub fn resolve_convention(config: &RunConfig) -> Result<ConventionInfo, CliError> {
    match config.convention {
        ConventionMode::Fixed(c) => Ok(ConventionInfo {
            name: c.name().to_string(),
            mode: "fixed".to_string(),
            candidates: vec![c.name().to_string()],
            tie_break: None,
        }),
        ConventionMode::Auto => {
            let choice = auto_convention(&config.oracle_options(DEFAULT_MAX_DEGREE))?;
            Ok(ConventionInfo {
                name: choice.convention.name().to_string(),
                mode: "auto".to_string(),
                candidates: choice.candidates.iter().map(|c| c.name().to_string()).collect(),
                tie_break: choice.tie_break.map(str::to_string),
            })
        }
    }
}

/// The family parameters of `datum`, when it is a member.
pub fn family_params(datum: &BranchDatum) -> Option<HeartParams> {
    let d = datum.degree();
    if !d.is_multiple_of(2) {
        return None;
    }
    let k = d / 2;
    let [first, second, pi] = datum.partitions();
    if *first != Partition::repeated(2, k).ok()? {
        return None;
    }
    let h = (0..=k.checked_sub(2)?).find(|&h| heart_second_partition(h, k) == *second)?;
    let g = datum.genus();
    (HeartParams::expected_len(g, h) == Some(pi.len())).then(|| HeartParams {
        g,
        h,
        k,
        pi: pi.clone(),
    })
}

/// Builds the datum from the command line.
pub(crate) fn resolve_datum(spec: &DatumSpec) -> Result<(BranchDatum, Option<HeartParams>), CliError> {
    if let Some(json) = &spec.json {
        let datum: BranchDatum = serde_json::from_str(json).map_err(CliError::DatumJson)?;
        let params = family_params(&datum);
        return Ok((datum, params));
    }
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("missing --{flag} (or give --datum)")));
    let (g, h, k) = (need(spec.g, "genus")?, need(spec.h, "h")?, need(spec.k, "k")?);
    let pi = match &spec.pi {
        Some(text) => parse_partition(text)?,
        // genus 1 with h = 1 and genus 2 with h = 3 have π = [2k]
        None if HeartParams::expected_len(g, h) == Some(1) => Partition::new(vec![2 * k]).expect("k > 0"),
        None => return Err(CliError::Usage("missing --pi".to_string())),
    };
    let datum = make_heart(g, h, k, &pi)?;
    Ok((datum, Some(HeartParams { g, h, k, pi })))
}

/// Parses, runs and renders one command line.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    match config.command {
        Command::Check => cmd_check(config),
        Command::Count => cmd_count(config),
        Command::Table(id) => cmd_table(id, config.format),
        Command::Sweep => cmd_sweep(config),
    }
}

pub(crate) fn csv_string<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Output(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

pub(crate) fn json_string<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Output(e.to_string()))
}
