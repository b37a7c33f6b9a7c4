use std::fmt::Write;

use hurwitz_core::formulas::nu_genus0;
use hurwitz_core::partition::partitions_with_len;
use hurwitz_core::witnesses::enumerate_witnesses;
use serde::{Deserialize, Serialize};

use crate::{csv_string, json_string, CliError, Format, Report};

/// A row of the genus 0, h = 1, k = 8 table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub pi: String,
    pub case: String,
    pub nu: u64,
    pub realizations: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct TableCsv {
    pi: String,
    case: String,
    nu: u64,
    realizations: String,
}

/// All 21 rows in reverse-lexicographic order of π, plus the number of rows
/// where the witness count disagrees with the formula.
pub fn table1_rows() -> Result<(Vec<TableRow>, usize), CliError> {
    let (h, k) = (1, 8);
    let mut rows = Vec::new();
    let mut mismatches = 0;
    for pi in partitions_with_len(2 * k, 3) {
        let f = nu_genus0(h, k, &pi)?;
        let ws = enumerate_witnesses(0, h, k, &pi)?;
        if ws.len() as u64 != f.nu {
            mismatches += 1;
        }
        rows.push(TableRow {
            pi: pi.to_tuple_string(),
            case: f.label.map(|l| l.to_string()).unwrap_or_default(),
            nu: f.nu,
            realizations: ws.iter().map(ToString::to_string).collect(),
        });
    }
    Ok((rows, mismatches))
}

pub fn render_text(rows: &[TableRow]) -> String {
    let mut s = String::from("pi          case    nu  realizations\n");
    for r in rows {
        let real = if r.realizations.is_empty() {
            "-".to_string()
        } else {
            r.realizations.join(", ")
        };
        let _ = writeln!(s, "{:<12}{:<8}{:<4}{}", r.pi, r.case, r.nu, real);
    }
    s
}

pub fn cmd_table(id: u32, format: Format) -> Result<Report, CliError> {
    if id != 1 {
        return Err(CliError::Usage(format!("unknown table {id}; only table 1 exists")));
    }
    let (rows, mismatches) = table1_rows()?;
    let output = match format {
        Format::Text => render_text(&rows),
        Format::Json => json_string(&rows)?,
        Format::Csv => csv_string(
            &rows
                .iter()
                .map(|r| TableCsv {
                    pi: r.pi.clone(),
                    case: r.case.clone(),
                    nu: r.nu,
                    realizations: r.realizations.join(" "),
                })
                .collect::<Vec<_>>(),
        )?,
    };
    Ok(Report {
        output,
        discrepancies: mismatches,
    })
}
