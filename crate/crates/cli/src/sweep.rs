use std::fmt::Write;
use std::path::PathBuf;

use hurwitz_core::branch::{make_heart, BranchDatum, HeartParams};
use hurwitz_core::formulas::SUPPORTED;
use hurwitz_core::oracle::HARD_DEGREE_LIMIT;
use hurwitz_core::partition::partitions_with_len;
use serde::{Deserialize, Serialize};

use crate::cache::Cache;
use crate::count::{agreement, compute};
use crate::{csv_string, json_string, resolve_convention, CliError, Format, Method, Report, RunConfig};

pub const DEFAULT_SWEEP_MAX_D: usize = 12;
const DEFAULT_CACHE: &str = "hurwitz_cache.jsonl";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub datum: BranchDatum,
    pub formula: Option<u64>,
    pub witnesses: Option<u64>,
    pub oracle: Option<u64>,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub max_d: usize,
    pub convention: String,
    pub rows: Vec<SweepRow>,
    pub discrepancies: usize,
}

#[derive(Serialize, Deserialize)]
struct SweepCsv {
    g: usize,
    d: usize,
    pi1: String,
    pi2: String,
    pi3: String,
    formula: Option<u64>,
    witnesses: Option<u64>,
    oracle: Option<u64>,
    verdict: String,
}

/// Every in-scope family datum with d ≤ `max_d`, grouped by (g, h), then k,
/// then π in reverse-lexicographic order.
pub fn family_data(max_d: usize) -> Vec<HeartParams> {
    let mut out = Vec::new();
    for &(g, h) in &SUPPORTED {
        let len = HeartParams::expected_len(g, h).expect("supported pairs are in the window");
        for k in h + 2..=max_d / 2 {
            for pi in partitions_with_len(2 * k, len) {
                out.push(HeartParams { g, h, k, pi });
            }
        }
    }
    out
}

fn cache_path(config: &RunConfig) -> PathBuf {
    config.cache.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE))
}

pub fn cmd_sweep(config: &RunConfig) -> Result<Report, CliError> {
    let max_d = config.max_d.unwrap_or(DEFAULT_SWEEP_MAX_D);
    if max_d > HARD_DEGREE_LIMIT {
        return Err(hurwitz_core::OracleError::HardLimit { degree: max_d }.into());
    }
    let convention = resolve_convention(config)?;
    let conv_name = convention.name.clone();
    let mut cache = Cache::open(&cache_path(config))?;

    let mut rows = Vec::new();
    for params in family_data(max_d) {
        let datum = make_heart(params.g, params.h, params.k, &params.pi)?;
        if config.only_coincident && !datum.has_repeated_partitions() {
            continue;
        }
        let methods: &[(Method, &str)] = match config.method {
            Method::All => &[(Method::Formula, "formula"), (Method::Witnesses, "witnesses"), (Method::Oracle, "oracle")],
            Method::Formula => &[(Method::Formula, "formula")],
            Method::Witnesses => &[(Method::Witnesses, "witnesses")],
            Method::Oracle => &[(Method::Oracle, "oracle")],
        };
        let mut values = [None; 3];
        for &(method, name) in methods {
            let conv = (method == Method::Oracle).then_some(conv_name.as_str());
            let cached = if config.force { None } else { cache.get(&datum, name, conv) };
            let nu = match cached {
                Some(nu) => nu,
                None => {
                    let c = compute(&datum, Some(&params), method, config, max_d)?;
                    let nu = match method {
                        Method::Formula => c.formula.and_then(Result::ok).map(|f| f.nu),
                        Method::Witnesses => c.witnesses.and_then(Result::ok).map(|w| w.1),
                        _ => Some(c.oracle.expect("oracle requested")?.weak(convention.convention())),
                    };
                    cache.put(&datum, name, conv, nu);
                    nu
                }
            };
            let index = match method {
                Method::Formula => 0,
                Method::Witnesses => 1,
                _ => 2,
            };
            values[index] = nu;
        }
        let (_, agree) = agreement(&values);
        rows.push(SweepRow {
            datum,
            formula: values[0],
            witnesses: values[1],
            oracle: values[2],
            verdict: if agree { "ok" } else { "DISCREPANT" }.to_string(),
        });
    }
    cache.flush()?;
    eprintln!("cache: {} hits, {} entries", cache.hits, cache.len());

    let discrepancies = rows.iter().filter(|r| r.verdict != "ok").count();
    let report = SweepReport {
        max_d,
        convention: conv_name,
        rows,
        discrepancies,
    };
    let output = match config.format {
        Format::Json => json_string(&report)?,
        Format::Csv => csv_string(
            &report
                .rows
                .iter()
                .map(|r| {
                    let [p1, p2, p3] = r.datum.partitions();
                    SweepCsv {
                        g: r.datum.genus(),
                        d: r.datum.degree(),
                        pi1: p1.to_string(),
                        pi2: p2.to_string(),
                        pi3: p3.to_string(),
                        formula: r.formula,
                        witnesses: r.witnesses,
                        oracle: r.oracle,
                        verdict: r.verdict.clone(),
                    }
                })
                .collect::<Vec<_>>(),
        )?,
        Format::Text => {
            let mut s = String::new();
            let o = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
            for r in &report.rows {
                let _ = writeln!(
                    s,
                    "{:<56} formula={:<3} witnesses={:<3} oracle={:<3} {}",
                    r.datum.to_string(),
                    o(r.formula),
                    o(r.witnesses),
                    o(r.oracle),
                    r.verdict
                );
            }
            let _ = writeln!(
                s,
                "data {}  discrepancies {}  max-d {}  convention {}",
                report.rows.len(),
                discrepancies,
                max_d,
                report.convention
            );
            s
        }
    };
    Ok(Report { output, discrepancies })
}
