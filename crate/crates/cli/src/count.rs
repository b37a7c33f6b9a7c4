use std::fmt::Write;
use std::time::Instant;

use hurwitz_core::branch::{BranchDatum, HeartParams};
use hurwitz_core::formulas::{formula_nu, is_supported, FormulaResult};
use hurwitz_core::oracle::{oracle_counts, OracleCounts, OracleError};
use hurwitz_core::witnesses::{coincident_resolution, enumerate_witnesses, DessinWitness};
use serde::{Deserialize, Serialize};

use crate::{csv_string, json_string, resolve_convention, resolve_datum, CliError, ConventionInfo, Format, Method, Report, RunConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOut {
    pub family: String,
    pub params: Vec<usize>,
}

impl From<&DessinWitness> for WitnessOut {
    fn from(w: &DessinWitness) -> Self {
        WitnessOut {
            family: w.family().name().to_string(),
            params: w.params().to_vec(),
        }
    }
}

impl WitnessOut {
    pub fn text(&self) -> String {
        let ps: Vec<String> = self.params.iter().map(ToString::to_string).collect();
        format!("{}({})", self.family, ps.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntermediateOut {
    pub name: String,
    /// Exact rational, e.g. `13/2`.
    pub value: String,
}

/// One method's answer, or why it produced none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathValue {
    pub method: String,
    pub nu: Option<u64>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountResult {
    pub datum: BranchDatum,
    /// Agreed weak count; absent when the paths disagree.
    pub nu_weak: Option<u64>,
    pub nu_strong: Option<u64>,
    pub case: Option<String>,
    pub witnesses: Option<Vec<WitnessOut>>,
    pub intermediates: Option<Vec<IntermediateOut>>,
    pub paths: Vec<PathValue>,
    pub convention: ConventionInfo,
    pub verdict: String,
    pub elapsed_ms: f64,
}

impl CountResult {
    pub fn discrepant(&self) -> bool {
        self.verdict != "ok"
    }

    pub fn path(&self, method: &str) -> Option<&PathValue> {
        self.paths.iter().find(|p| p.method == method)
    }
}

#[derive(Serialize, Deserialize)]
struct CountCsv {
    g: usize,
    d: usize,
    pi1: String,
    pi2: String,
    pi3: String,
    nu_weak: Option<u64>,
    nu_strong: Option<u64>,
    case: Option<String>,
    formula: Option<u64>,
    witnesses: Option<u64>,
    oracle: Option<u64>,
    convention: String,
    verdict: String,
    elapsed_ms: f64,
}

/// Witnesses found, the count reported, and whether it was tabulated.
pub(crate) type WitnessPath = (Vec<DessinWitness>, u64, bool);

pub(crate) struct Computed {
    pub formula: Option<Result<FormulaResult, String>>,
    pub witnesses: Option<Result<WitnessPath, String>>,
    pub oracle: Option<Result<OracleCounts, OracleError>>,
}

/// Runs the requested paths for one datum. The witness count is replaced by
/// the tabulated value for data with repeated partitions.
pub(crate) fn compute(
    datum: &BranchDatum,
    params: Option<&HeartParams>,
    method: Method,
    config: &RunConfig,
    oracle_bound: usize,
) -> Result<Computed, CliError> {
    let want = |m: Method| method == m || method == Method::All;
    let in_scope = params.filter(|p| is_supported(p.g, p.h));
    let formula = if want(Method::Formula) {
        match in_scope {
            Some(p) => Some(formula_nu(p.g, p.h, p.k, &p.pi).map_err(|e| e.to_string())),
            None if method == Method::Formula => {
                return Err(CliError::Usage(format!("no closed form for {datum}")));
            }
            None => Some(Err("no closed form".to_string())),
        }
    } else {
        None
    };
    let witnesses = if want(Method::Witnesses) {
        match in_scope {
            Some(p) => {
                let ws = enumerate_witnesses(p.g, p.h, p.k, &p.pi)?;
                let tabulated = coincident_resolution(datum);
                let nu = tabulated.unwrap_or(ws.len() as u64);
                Some(Ok((ws, nu, tabulated.is_some())))
            }
            None if method == Method::Witnesses => {
                return Err(CliError::Usage(format!("no witness families for {datum}")));
            }
            None => Some(Err("no witness families".to_string())),
        }
    } else {
        None
    };
    let oracle = if want(Method::Oracle) {
        let result = oracle_counts(datum, &config.oracle_options(oracle_bound));
        match result {
            Err(e) if method == Method::Oracle => return Err(e.into()),
            r => Some(r),
        }
    } else {
        None
    };
    Ok(Computed {
        formula,
        witnesses,
        oracle,
    })
}

pub(crate) fn agreement(values: &[Option<u64>]) -> (Option<u64>, bool) {
    let present: Vec<u64> = values.iter().flatten().copied().collect();
    match present.first() {
        None => (None, true),
        Some(&v) if present.iter().all(|&x| x == v) => (Some(v), true),
        _ => (None, false),
    }
}

pub fn cmd_count(config: &RunConfig) -> Result<Report, CliError> {
    let start = Instant::now();
    let (datum, params) = resolve_datum(&config.datum)?;
    let convention = resolve_convention(config)?;
    let computed = compute(&datum, params.as_ref(), config.method, config, config.oracle_bound())?;

    let mut paths = Vec::new();
    let (mut case, mut intermediates, mut witnesses, mut nu_strong) = (None, None, None, None);
    if let Some(f) = &computed.formula {
        paths.push(match f {
            Ok(r) => {
                case = r.label.map(|l| l.to_string());
                intermediates = Some(
                    r.intermediates
                        .iter()
                        .map(|i| IntermediateOut {
                            name: i.name.to_string(),
                            value: i.value.to_string(),
                        })
                        .collect(),
                );
                PathValue {
                    method: "formula".into(),
                    nu: Some(r.nu),
                    note: Some(r.formula.to_string()),
                }
            }
            Err(e) => PathValue {
                method: "formula".into(),
                nu: None,
                note: Some(e.clone()),
            },
        });
    }
    if let Some(w) = &computed.witnesses {
        paths.push(match w {
            Ok((ws, nu, tabulated)) => {
                witnesses = Some(ws.iter().map(WitnessOut::from).collect());
                PathValue {
                    method: "witnesses".into(),
                    nu: Some(*nu),
                    note: tabulated.then(|| format!("repeated partitions: tabulated, {} identity-coloured", ws.len())),
                }
            }
            Err(e) => PathValue {
                method: "witnesses".into(),
                nu: None,
                note: Some(e.clone()),
            },
        });
    }
    if let Some(o) = &computed.oracle {
        paths.push(match o {
            Ok(c) => {
                nu_strong = Some(c.strong);
                PathValue {
                    method: "oracle".into(),
                    nu: Some(c.weak(convention.convention())),
                    note: None,
                }
            }
            Err(e) => PathValue {
                method: "oracle".into(),
                nu: None,
                note: Some(format!("skipped: {e}")),
            },
        });
    }
    let values: Vec<Option<u64>> = paths.iter().map(|p| p.nu).collect();
    let (nu_weak, agree) = agreement(&values);
    let result = CountResult {
        datum,
        nu_weak,
        nu_strong,
        case,
        witnesses,
        intermediates,
        paths,
        convention,
        verdict: if agree { "ok" } else { "DISCREPANT" }.to_string(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let output = render(&result, config.format)?;
    Ok(Report {
        output,
        discrepancies: usize::from(!agree),
    })
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), ToString::to_string)
}

fn render(r: &CountResult, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json_string(r),
        Format::Csv => {
            let [p1, p2, p3] = r.datum.partitions();
            let nu_of = |m: &str| r.path(m).and_then(|p| p.nu);
            csv_string(&[CountCsv {
                g: r.datum.genus(),
                d: r.datum.degree(),
                pi1: p1.to_string(),
                pi2: p2.to_string(),
                pi3: p3.to_string(),
                nu_weak: r.nu_weak,
                nu_strong: r.nu_strong,
                case: r.case.clone(),
                formula: nu_of("formula"),
                witnesses: nu_of("witnesses"),
                oracle: nu_of("oracle"),
                convention: r.convention.name.clone(),
                verdict: r.verdict.clone(),
                elapsed_ms: r.elapsed_ms,
            }])
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "datum          {}", r.datum);
            for p in &r.paths {
                let note = p.note.as_ref().map(|n| format!("  ({n})")).unwrap_or_default();
                let _ = writeln!(s, "{:<15}{}{}", p.method, opt(&p.nu), note);
            }
            let _ = writeln!(s, "nu_weak        {}", opt(&r.nu_weak));
            if r.nu_strong.is_some() {
                let _ = writeln!(s, "nu_strong      {}", opt(&r.nu_strong));
            }
            if let Some(c) = &r.case {
                let _ = writeln!(s, "case           {c}");
            }
            if let Some(ws) = &r.witnesses {
                let list: Vec<String> = ws.iter().map(WitnessOut::text).collect();
                let _ = writeln!(s, "realizations   {}", if list.is_empty() { "-".to_string() } else { list.join(", ") });
            }
            if let Some(is) = r.intermediates.as_ref().filter(|v| !v.is_empty()) {
                let list: Vec<String> = is.iter().map(|i| format!("{}={}", i.name, i.value)).collect();
                let _ = writeln!(s, "intermediates  {}", list.join(" "));
            }
            let c = &r.convention;
            let mut conv = format!("{} ({}", c.name, c.mode);
            if let Some(t) = &c.tie_break {
                let _ = write!(conv, "; tie between {}; {t}", c.candidates.join(", "));
            }
            conv.push(')');
            let _ = writeln!(s, "convention     {conv}");
            let _ = writeln!(s, "verdict        {}", r.verdict);
            let _ = writeln!(s, "elapsed        {:.1} ms", r.elapsed_ms);
            Ok(s)
        }
    }
}
