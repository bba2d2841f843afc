//! End-to-end runs of the `arcact` binary.

use std::path::Path;
use std::process::{Command, Output};

use arcact::partition::PartitionJson;
use arcact::{GroupSpec, LabeledSetPartition};

fn arcact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arcact"))
        .args(args)
        .env_remove("ARCACT_OEIS_DIR")
        .env("XDG_CACHE_HOME", env!("CARGO_TARGET_TMPDIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enum_nc4_has_fourteen_lines() {
    let o = arcact(&["enum", "--family", "NC", "--n", "4", "--group", "Z2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 14);
}

#[test]
fn enum_jsonl_round_trips() {
    let o = arcact(&["enum", "--family", "P_B", "--n", "2", "--group", "Z3", "--format", "jsonl"]);
    assert_eq!(o.status.code(), Some(0));
    let parsed: Vec<LabeledSetPartition> = stdout(&o)
        .lines()
        .map(|line| {
            let doc: PartitionJson = serde_json::from_str(line).unwrap();
            LabeledSetPartition::from_json(&doc, &GroupSpec::cyclic(3)).unwrap()
        })
        .collect();
    let spec = arcact::enumerate::FamilySpec::single(arcact::enumerate::Family::PB, 2, GroupSpec::cyclic(3)).unwrap();
    let expected: Vec<LabeledSetPartition> = arcact::enumerate::enumerate(&spec).collect();
    assert_eq!(parsed, expected);
}

#[test]
fn csv_and_json_carry_the_same_rows() {
    let json = arcact(&["poly", "--family", "Cat_B", "--upto", "4", "--format", "json"]);
    let csv = arcact(&["poly", "--family", "Cat_B", "--upto", "4", "--format", "csv"]);
    let records: Vec<serde_json::Value> = serde_json::from_str(&stdout(&json)).unwrap();
    let csv_text = stdout(&csv);
    let mut lines = csv_text.lines();
    assert_eq!(lines.next(), Some("family,n,polynomial"));
    for (record, line) in records.iter().zip(lines) {
        let expected = format!("Cat_B,{},{}", record["n"], record["polynomial"].as_str().unwrap());
        assert_eq!(line.trim_matches('"'), expected.trim_matches('"'));
    }
    assert_eq!(records.len(), 5);
}

#[test]
fn every_format_renders() {
    for format in ["json", "jsonl", "csv", "table", "latex"] {
        let o =
            arcact(&["orbits", "--family", "PI_AB", "--n", "3", "--group", "Z2", "--group", "Z3", "--format", format]);
        assert_eq!(o.status.code(), Some(0), "{format}");
        assert!(!stdout(&o).is_empty(), "{format}");
    }
}

#[test]
fn render_matches_golden_file() {
    let golden =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/render_seven_points.txt"))
            .unwrap();
    let o = arcact(&["render", "{1,3,4,7}{2,6}{5}"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden);
}

#[test]
fn verify_ids_pass_and_unknown_is_usage_error() {
    let o = arcact(&["verify", "--id", "coker", "--id", "touchard", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let records: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(records.iter().all(|r| r["status"] == "pass"));
    assert_eq!(arcact(&["verify", "--id", "no-such-identity"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(arcact(&["enum", "--family", "NC", "--n", "3", "--bogus"]).status.code(), Some(2));
    assert_eq!(arcact(&["enum", "--family", "NC", "--n", "3", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(arcact(&["render", "{1,3"]).status.code(), Some(2));
    assert_eq!(arcact(&["chartable", "--kind", "B", "--n", "2", "--p", "2"]).status.code(), Some(2));
}

#[test]
fn scale_guard_refuses_large_groups() {
    let o = arcact(&["--max-group-order", "100", "chartable", "--n", "5", "--p", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("limit 100"));
}

#[test]
fn chartable_check_passes() {
    let o = arcact(&["chartable", "--kind", "D", "--n", "2", "--p", "3", "--check", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let records: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(records.len(), 3);
}

#[test]
fn oeis_check_with_local_bfile() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b007405.txt");
    std::fs::write(&path, "# Dowling numbers\n0 1\n1 2\n2 6\n3 24\n4 116\n5 648\n6 4088\n").unwrap();
    let p = path.to_str().unwrap();
    let good = arcact(&["oeis-check", "--sequence", "Bell_B", "--n-max", "6", "--bfile", p, "--format", "json"]);
    assert_eq!(good.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&good)).unwrap();
    assert_eq!(report["status"], "match");
    let shifted = arcact(&[
        "oeis-check",
        "--sequence",
        "Bell_B",
        "--offset",
        "1",
        "--n-max",
        "6",
        "--bfile",
        p,
        "--format",
        "json",
    ]);
    assert_eq!(shifted.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&shifted)).unwrap();
    assert_eq!(report["mismatch"]["index"], 0);
}

#[test]
fn oeis_check_reads_the_directory_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("b002426.txt"), "0 1\n1 1\n2 3\n3 7\n4 19\n5 51\n6 141\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_arcact"))
        .args(["oeis-check", "--sequence", "M_B", "--n-max", "6"])
        .env("ARCACT_OEIS_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn missing_bfile_is_an_io_error() {
    let o = arcact(&["oeis-check", "--sequence", "Bell_B", "--bfile", "/nonexistent/b007405.txt"]);
    assert_eq!(o.status.code(), Some(3));
    let bad = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(bad.path(), "0 1\n1 x\n").unwrap();
    let o = arcact(&["oeis-check", "--sequence", "Bell_B", "--bfile", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at 2"));
}

#[test]
fn map_plus_and_dyck() {
    let o = arcact(&["map", "--map", "plus", "--group", "Z3", "--alpha", "{1,2}{3} (1,2)=1", "{1,2}{3} (1,2)=2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "{1}{2}{3}");
    let o = arcact(&["map", "--map", "dyck", "{1,3}{2}"]);
    assert_eq!(stdout(&o).trim(), "UUDUDD");
}

#[test]
fn random_uncross_is_seed_independent() {
    let a = arcact(&["--seed", "1", "map", "--map", "uncross-random", "{1,3,5}{2,4}"]);
    let b = arcact(&["--seed", "2", "map", "--map", "uncross-random", "{1,3,5}{2,4}"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn jobs_flag_is_accepted() {
    let o = arcact(&["--jobs", "1", "verify", "--id", "riordan", "--profile", "quick"]);
    assert_eq!(o.status.code(), Some(0));
}
