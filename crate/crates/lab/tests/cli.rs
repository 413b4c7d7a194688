use std::path::Path;
use std::process::{Command, Output};

use tpp_core::catalog::{SHIPPED_EXPORTS, SHIPPED_MANIFEST};
use tpp_lab::tables::{parse_csv, render, Format};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpp-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// A catalog directory with one manifest line rewritten.
fn edited_catalog(dir: &Path, from: &str, to: &str) {
    assert!(SHIPPED_MANIFEST.contains(from));
    std::fs::write(
        dir.join("manifest.txt"),
        SHIPPED_MANIFEST.replacen(from, to, 1),
    )
    .unwrap();
    std::fs::write(dir.join("exports.txt"), SHIPPED_EXPORTS).unwrap();
}

const D8_ROW: &str = "[8, 3] | 2 | D8 | dihedral(8) | 2 | 2 | 1,2 | 1 | order=8 z=2";

#[test]
fn verify_passes_on_a_table_row() {
    let o = lab(&["verify", "[8,3]", "[32, 49]"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("[8, 3]       PASS          rho0=1"));
    assert!(text.contains("[32, 49]     PASS          rho0=2"));
    assert!(text.contains("extraspecial: rho0 <= 2 ok, attained"));
}

#[test]
fn order_128_is_inconclusive_without_deep() {
    let o = lab(&["verify", "[128, 2194]"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("INCONCLUSIVE"));
    let o = lab(&["verify", "[128, 2194]", "--allow-inconclusive"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn exhausted_budget_is_inconclusive_not_pass() {
    let o = lab(&["verify", "[32, 49]", "--budget-candidates", "1"]);
    assert_eq!(code(&o), 2);
    let text = stdout(&o);
    assert!(text.contains("INCONCLUSIVE"));
    assert!(text.contains("rho0>="));
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(code(&lab(&["verify", "[9, 9]"])), 3);
    assert_eq!(code(&lab(&["verify"])), 3);
    assert_eq!(code(&lab(&["verify", "--bogus"])), 3);
    assert_eq!(code(&lab(&["tables", "--table", "4"])), 3);
    assert_eq!(
        code(&lab(&["tables", "--table", "1", "--format", "xml"])),
        3
    );
    assert_eq!(code(&lab(&["props", "--suite", "nonsense"])), 3);
    assert_eq!(
        code(&lab(&["verify", "--all", "--catalog", "/nonexistent/dir"])),
        3
    );
}

#[test]
fn fingerprint_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    edited_catalog(dir.path(), D8_ROW, &D8_ROW.replace("z=2", "z=4"));
    let o = lab(&[
        "verify",
        "[8, 3]",
        "--catalog",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("MISMATCH"), "{text}");
    assert!(text.contains("fingerprint mismatch"), "{text}");
}

#[test]
fn declared_rho0_mismatch_is_reported_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let wrong = D8_ROW.replace("| 1,2 | 1 |", "| 1,2 | 2 |");
    edited_catalog(dir.path(), D8_ROW, &wrong);
    let o = lab(&[
        "verify",
        "[8, 3]",
        "--catalog",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("rho0 = 1 but the table gives 2"), "{text}");
    assert!(text.contains("witness S="), "{text}");
}

#[test]
fn table_three_and_table_two_at_order_eight() {
    let o = lab(&["tables", "--table", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rho: Vec<&str> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["rho0"].as_str().unwrap())
        .collect();
    assert_eq!(rho, ["1", "1"]);

    let o = lab(&["tables", "--table", "2", "--order", "8", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let rows = parse_csv(&stdout(&o)).unwrap();
    let labels: Vec<&str> = rows.iter().map(|r| r.group.as_str()).collect();
    assert_eq!(labels, ["[8, 3]", "[8, 4]"]);
    assert!(rows.iter().all(|r| r.rho0 == "1"));
}

#[test]
fn table_one_csv_round_trips() {
    let o = lab(&["tables", "--table", "1", "--format", "csv"]);
    // order-128 rows are not searched by default
    assert_eq!(code(&o), 2);
    let text = stdout(&o);
    let rows = parse_csv(&text).unwrap();
    assert_eq!(rows.len(), 16);
    assert_eq!(render(&rows, Format::Csv), text);
    let big = rows.iter().find(|r| r.group == "[64, 226]").unwrap();
    assert_eq!((big.sqrt_index.as_str(), big.rho0.as_str()), ("4", "2"));
}

#[test]
fn cd_conflict_is_flagged_in_the_table() {
    let o = lab(&["tables", "--table", "2", "--order", "32", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let rows = parse_csv(&stdout(&o)).unwrap();
    let flagged: Vec<&str> = rows
        .iter()
        .filter(|r| r.cd.ends_with('!'))
        .map(|r| r.group.as_str())
        .collect();
    assert_eq!(flagged, ["[32, 50]"]);
}

#[test]
fn reports_are_byte_deterministic() {
    let a = lab(&["verify", "--table", "2", "--format", "json"]);
    let b = lab(&["verify", "--table", "2", "--format", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let s1 = lab(&["search", "[32, 49]"]);
    let s2 = lab(&["search", "[32, 49]"]);
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t3.md");
    let o = lab(&["tables", "--table", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.contains("| 3 | [27, 4] | C9 : C3 | 3 | 3 | {1, 3} | 1 | PASS |"));
}

#[test]
fn props_exit_codes() {
    let o = lab(&[
        "props",
        "--suite",
        "abelian-beta",
        "--suite",
        "class-two-chain",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("abelian-beta                 PASS"));
    let o = lab(&[
        "props",
        "--suite",
        "extraspecial-non-generation",
        "--seed",
        "1",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("counterexample: [8, 3]"));
}

#[test]
fn search_and_show_emit_json() {
    let o = lab(&["search", "[32,49]"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (v["rho0_num"].as_u64(), v["rho0_den"].as_u64()),
        (Some(2), Some(1))
    );
    assert_eq!(v["beta0"], 64);

    let o = lab(&["search", "[8,4]", "--subsets"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["beta"], 8);

    let o = lab(&["show", "[8,4]"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[0]["size"], 1);
    assert_eq!(lines[6]["classification"]["centre_order"], 2);
}

#[test]
fn show_reads_group_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c3.txt");
    std::fs::write(&path, "group-table v1\norder 3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
    let o = lab(&["show", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 3);
}
