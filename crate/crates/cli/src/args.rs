use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hurwitz_core::oracle::WeakConvention;

use crate::{Command, ConventionMode, DatumSpec, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Oracle,
    Witnesses,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "hurwitz", version, about = "Weak Hurwitz numbers of three-point sphere covers")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the oracle (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// auto, fixed, or an explicit convention: conjugation, slots, reflection, reflection+slots.
    #[arg(long, global = true, default_value = "auto", value_parser = parse_convention)]
    convention: ConventionMode,
    /// Oracle degree bound for count; degree range for sweep.
    #[arg(long = "max-d", global = true)]
    max_d: Option<usize>,
    /// Line-delimited JSON cache (overridden by HURWITZ_CACHE).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Recompute cached entries.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Riemann–Hurwitz bookkeeping for a datum.
    Check(DatumArgs),
    /// Compute ν by formula, witnesses and/or oracle.
    Count {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Print a reference table.
    Table {
        #[arg(default_value_t = 1)]
        id: u32,
    },
    /// Cross-check every family datum up to --max-d.
    Sweep {
        #[arg(long)]
        only_coincident: bool,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
}

#[derive(Args, Debug, Clone, Default)]
struct DatumArgs {
    #[arg(long, visible_alias = "g")]
    genus: Option<usize>,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Third partition, e.g. 14,1,1 or 2^4.
    #[arg(long)]
    pi: Option<String>,
    /// A full datum as JSON: {"g":0,"d":4,"partitions":[[2,2],[3,1],[3,1]]}.
    #[arg(long, conflicts_with_all = ["genus", "h", "k", "pi"])]
    datum: Option<String>,
}

fn parse_convention(s: &str) -> Result<ConventionMode, String> {
    match s {
        "auto" => Ok(ConventionMode::Auto),
        "fixed" => Ok(ConventionMode::Fixed(WeakConvention::REFLECTION_AND_SLOTS)),
        name => WeakConvention::parse(name)
            .map(ConventionMode::Fixed)
            .ok_or_else(|| format!("unknown convention {name:?}")),
    }
}

impl From<DatumArgs> for DatumSpec {
    fn from(a: DatumArgs) -> Self {
        DatumSpec {
            g: a.genus,
            h: a.h,
            k: a.k,
            pi: a.pi,
            json: a.datum,
        }
    }
}

/// Parses a command line (program name first).
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let (command, datum, method, only_coincident) = match cli.command {
        Cmd::Check(d) => (Command::Check, d.into(), Method::All, false),
        Cmd::Count { datum, method } => (Command::Count, datum.into(), method, false),
        Cmd::Table { id } => (Command::Table(id), DatumSpec::default(), Method::All, false),
        Cmd::Sweep { only_coincident, method } => (Command::Sweep, DatumSpec::default(), method, only_coincident),
    };
    let cache = std::env::var_os("HURWITZ_CACHE").map(PathBuf::from).or(cli.cache);
    Ok(RunConfig {
        command,
        datum,
        method,
        convention: cli.convention,
        max_d: cli.max_d,
        threads: cli.threads,
        format: cli.format,
        cache,
        force: cli.force,
        only_coincident,
    })
}
