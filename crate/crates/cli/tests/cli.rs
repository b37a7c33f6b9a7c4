use std::path::Path;
use std::process::{Command, Output};

use hurwitz_cli::{CountResult, SweepReport, EXIT_INFEASIBLE, EXIT_IO, EXIT_USAGE};

const GOLDEN: &str = include_str!("golden/table1.txt");

fn hurwitz(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .env("HURWITZ_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let dir = tempfile::tempdir().unwrap();
    let o = hurwitz(args, &dir.path().join("cache.jsonl"));
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn check_reports_lengths_and_verdict() {
    let out = run_ok(&["check", "--genus", "0", "--h", "1", "--k", "8", "--pi", "14,1,1"]);
    assert!(out.contains("l=(8,7,3)"), "{out}");
    assert!(out.contains("verdict      compatible"));
}

#[test]
fn check_flags_repeated_partitions() {
    let out = run_ok(&["check", "--genus", "1", "--h", "2", "--k", "4", "--pi", "5,3"]);
    assert!(out.contains("case2"), "{out}");
    assert!(out.contains("equal slots  2=3"), "{out}");
}

#[test]
fn check_accepts_json_datum() {
    let out = run_ok(&["check", "--datum", r#"{"g":0,"d":6,"partitions":[[2,2,2],[3,3],[4,2]]}"#]);
    assert!(out.contains("incompatible"), "{out}");
}

#[test]
fn malformed_partition_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = hurwitz(&["check", "--genus", "0", "--h", "1", "--k", "8", "--pi", "14,x,1"], &dir.path().join("c"));
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    let o = hurwitz(&["count", "--bogus"], &dir.path().join("c"));
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn help_exits_zero() {
    let out = run_ok(&["--help"]);
    assert!(out.contains("sweep"));
}

#[test]
fn genus2_formula_with_intermediates() {
    let out = run_ok(&["--format", "json", "count", "--genus", "2", "--h", "3", "--k", "6", "--method", "formula"]);
    let r: CountResult = serde_json::from_str(&out).unwrap();
    assert_eq!(r.nu_weak, Some(20));
    let names: Vec<&str> = r.intermediates.as_ref().unwrap().iter().map(|i| i.name.as_str()).collect();
    assert!(names.contains(&"x") && names.contains(&"y"), "{names:?}");
}

#[test]
fn all_paths_agree_and_round_trip() {
    let out = run_ok(&["--format", "json", "count", "--genus", "0", "--h", "2", "--k", "6", "--pi", "5,4,2,1"]);
    let r: CountResult = serde_json::from_str(&out).unwrap();
    assert_eq!(r.nu_weak, Some(2));
    assert!(!r.discrepant());
    for m in ["formula", "witnesses", "oracle"] {
        assert_eq!(r.path(m).unwrap().nu, Some(2), "{m}");
    }
    assert_eq!(r.witnesses.as_ref().unwrap().len(), 2);
    let again: CountResult = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
}

#[test]
fn empty_count_for_h0_pattern() {
    let out = run_ok(&["count", "--genus", "0", "--h", "0", "--k", "3", "--pi", "3,3"]);
    assert!(out.contains("nu_weak        0"), "{out}");
    assert!(out.contains("verdict        ok"));
}

#[test]
fn csv_count_has_header_and_row() {
    let out = run_ok(&["--format", "csv", "count", "--genus", "1", "--h", "1", "--k", "6", "--pi", "12"]);
    let mut rd = csv::Reader::from_reader(out.as_bytes());
    let headers = rd.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    let col = headers.iter().position(|h| h == "nu_weak").unwrap();
    assert_eq!(&rows[0][col], "3");
}

#[test]
fn table_matches_golden_file() {
    assert_eq!(run_ok(&["table", "1"]), GOLDEN);
}

#[test]
fn table_csv_round_trips() {
    let out = run_ok(&["--format", "csv", "table", "1"]);
    assert_eq!(out.lines().count(), 22);
    let mut rd = csv::Reader::from_reader(out.as_bytes());
    let nus: Vec<u64> = rd.records().map(|r| r.unwrap()[2].parse().unwrap()).collect();
    let golden: Vec<u64> = GOLDEN.lines().skip(1).map(|l| l[20..24].trim().parse().unwrap()).collect();
    assert_eq!(nus, golden);
}

#[test]
fn unknown_table_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = hurwitz(&["table", "7"], &dir.path().join("c"));
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn sweep_is_clean_and_cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let first = hurwitz(&["sweep", "--max-d", "10"], &cache);
    assert!(first.status.success());
    assert!(std::fs::metadata(&cache).unwrap().len() > 0);
    let second = hurwitz(&["sweep", "--max-d", "10"], &cache);
    assert!(second.status.success());
    assert_eq!(stdout(&first), stdout(&second));
    let forced = hurwitz(&["--force", "sweep", "--max-d", "10"], &cache);
    assert_eq!(stdout(&first), stdout(&forced));
    assert!(stdout(&first).contains("discrepancies 0"));
}

#[test]
fn sweep_coincident_data() {
    let out = run_ok(&["--format", "json", "sweep", "--max-d", "12", "--only-coincident"]);
    let r: SweepReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.discrepancies, 0);
    let mut nus: Vec<u64> = r.rows.iter().map(|row| row.oracle.unwrap()).collect();
    nus.sort_unstable();
    assert_eq!(nus, [0, 0, 1, 1, 1, 1, 3]);
}

#[test]
fn oracle_beyond_bound_is_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let o = hurwitz(
        &["--max-d", "10", "count", "--genus", "0", "--h", "1", "--k", "6", "--pi", "10,1,1", "--method", "oracle"],
        &dir.path().join("c"),
    );
    assert_eq!(o.status.code(), Some(EXIT_INFEASIBLE));
    // under `all` the oracle is skipped instead
    let o = hurwitz(
        &["--max-d", "10", "count", "--genus", "0", "--h", "1", "--k", "6", "--pi", "10,1,1"],
        &dir.path().join("c"),
    );
    assert!(o.status.success());
    assert!(stdout(&o).contains("skipped"));
}

#[test]
fn bad_cache_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("bad.jsonl");
    std::fs::write(&garbage, "not json\n").unwrap();
    let o = hurwitz(&["sweep", "--max-d", "6"], &garbage);
    assert_eq!(o.status.code(), Some(EXIT_IO));
    let o = hurwitz(&["sweep", "--max-d", "6"], &dir.path().join("missing/dir/c.jsonl"));
    assert_eq!(o.status.code(), Some(EXIT_IO));
}

#[test]
fn explicit_convention_changes_counts() {
    let args = ["count", "--genus", "0", "--h", "2", "--k", "5", "--pi", "4,3,2,1", "--method", "oracle"];
    let with = run_ok(&args);
    assert!(with.contains("nu_weak        2"), "{with}");
    let mut no_refl = vec!["--convention", "slots"];
    no_refl.extend_from_slice(&args);
    let without = run_ok(&no_refl);
    assert!(without.contains("nu_weak        3"), "{without}");
}
