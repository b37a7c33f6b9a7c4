use std::fmt::Write;

use hurwitz_core::branch::{coincident_partitions, heart_second_partition, realized_coincidence, BranchDatum, HeartError};
use hurwitz_core::partition::{parse_partition, Partition};
use serde::{Deserialize, Serialize};

use crate::{csv_string, family_params, json_string, CliError, Format, Report, RunConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub datum: BranchDatum,
    pub lengths: [usize; 3],
    pub chi_source: i64,
    pub compatible: bool,
    /// Genus the partitions would force, if any.
    pub rh_genus: Option<usize>,
    pub family: Option<String>,
    /// Coincidence realized by this π, for family data.
    pub coincidence: Option<String>,
    /// Coincidences possible at (g, h, k).
    pub possible_coincidence: Option<String>,
    pub equal_slots: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct CheckCsv<'a> {
    g: usize,
    d: usize,
    pi1: String,
    pi2: String,
    pi3: String,
    l1: usize,
    l2: usize,
    l3: usize,
    chi_source: i64,
    compatible: bool,
    coincidence: &'a str,
}

/// Builds the datum without requiring RH, so incompatible input is reported
/// rather than rejected.
type FamilyTag = (usize, usize, usize, Partition);

fn raw_datum(config: &RunConfig) -> Result<(BranchDatum, Option<FamilyTag>), CliError> {
    let spec = &config.datum;
    if spec.json.is_some() {
        let (datum, params) = crate::resolve_datum(spec)?;
        return Ok((datum, params.map(|p| (p.g, p.h, p.k, p.pi))));
    }
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("missing --{flag} (or give --datum)")));
    let (g, h, k) = (need(spec.g, "genus")?, need(spec.h, "h")?, need(spec.k, "k")?);
    let pi = match &spec.pi {
        Some(t) => parse_partition(t)?,
        None => return Err(CliError::Usage("missing --pi".to_string())),
    };
    if k < h + 2 {
        return Err(HeartError::DegreeTooSmall { k, min: h + 2 }.into());
    }
    let first = Partition::repeated(2, k).expect("k > 0");
    let datum = BranchDatum::new(g, 2 * k, [first, heart_second_partition(h, k), pi.clone()])?;
    Ok((datum, Some((g, h, k, pi))))
}

pub fn cmd_check(config: &RunConfig) -> Result<Report, CliError> {
    let (datum, params) = raw_datum(config)?;
    let lengths = datum.lengths();
    let total: usize = lengths.iter().sum();
    let rh_genus = BranchDatum::from_partitions(datum.partitions().clone())?.map(|d| d.genus());
    let compatible = datum.rh_compatible();
    let member = family_params(&datum).is_some();
    let (coincidence, possible) = match &params {
        Some((g, h, k, pi)) if member || compatible => (
            Some(realized_coincidence(*g, *h, *k, pi).to_string()),
            Some(coincident_partitions(*g, *h, *k).to_string()),
        ),
        _ => (None, None),
    };
    let report = CheckReport {
        lengths,
        chi_source: datum.source_euler_characteristic(),
        compatible,
        rh_genus,
        family: family_params(&datum).map(|p| format!("g={} h={} k={}", p.g, p.h, p.k)),
        coincidence,
        possible_coincidence: possible,
        equal_slots: datum.equal_slots().into_iter().map(|(a, b)| (a + 1, b + 1)).collect(),
        datum,
    };
    let output = match config.format {
        Format::Json => json_string(&report)?,
        Format::Csv => {
            let [p1, p2, p3] = report.datum.partitions();
            csv_string(&[CheckCsv {
                g: report.datum.genus(),
                d: report.datum.degree(),
                pi1: p1.to_string(),
                pi2: p2.to_string(),
                pi3: p3.to_string(),
                l1: lengths[0],
                l2: lengths[1],
                l3: lengths[2],
                chi_source: report.chi_source,
                compatible,
                coincidence: report.coincidence.as_deref().unwrap_or(""),
            }])?
        }
        Format::Text => {
            let mut s = String::new();
            let d = &report.datum;
            let _ = writeln!(s, "datum        {d}");
            let _ = writeln!(s, "lengths      l=({},{},{})", lengths[0], lengths[1], lengths[2]);
            let _ = writeln!(
                s,
                "euler        chi(source) - (l1+l2+l3) = {} - {} = {}, -d = -{}",
                report.chi_source,
                total,
                report.chi_source - total as i64,
                d.degree()
            );
            let verdict = if compatible { "compatible" } else { "incompatible" };
            let _ = writeln!(s, "verdict      {verdict}");
            if !compatible {
                match rh_genus {
                    Some(g) => {
                        let _ = writeln!(s, "rh genus     {g}");
                    }
                    None => {
                        let _ = writeln!(s, "rh genus     none (odd or negative)");
                    }
                }
            }
            if let Some(f) = &report.family {
                let _ = writeln!(s, "family       {f}");
            }
            if let Some(c) = &report.coincidence {
                let _ = writeln!(s, "coincidence  {c} (possible at g,h,k: {})", report.possible_coincidence.as_deref().unwrap_or("none"));
            }
            let eq: Vec<String> = report.equal_slots.iter().map(|(a, b)| format!("{a}={b}")).collect();
            let _ = writeln!(s, "equal slots  {}", if eq.is_empty() { "-".to_string() } else { eq.join(" ") });
            s
        }
    };
    Ok(Report {
        output,
        discrepancies: 0,
    })
}
