//! End-to-end tests of the binary: flags, file formats and the exit-code
//! contract (0 ok, 1 usage, 2 refusal, 3 disagreement).

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

/// 121-bit reference period for p=11, r=2, f=5, g=2 with
/// X_1 = {0..4}, X_2 = {0..24}; its linear complexity is 111.
const REFERENCE_BITS_P11_R2: &str = "1110110111110010101010110000110011001001110010100100000111100001111000001001010011100100110011000011010101010011111011011";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gencyclo"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("gencyclo-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn info_reports_parameters() {
    let out = run(&["info", "--p", "11", "--r", "2", "--f", "5"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["e"], 2);
    assert_eq!(v["g"], 2);
    assert_eq!(v["ord2"], 10);
    assert_eq!(v["wieferich"], false);
    assert_eq!(v["assumptions_ok"], true);
    assert_eq!(v["period"], 121);
}

#[test]
fn info_flags_wieferich_prime() {
    let out = run(&["info", "--p", "1093", "--r", "1", "--f", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["wieferich"], true);
    assert_eq!(v["assumptions_ok"], false);
}

#[test]
fn info_rejects_composites() {
    let out = run(&["info", "--p", "9", "--r", "1", "--f", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn classes_dump() {
    let out = run(&["classes", "--p", "5", "--j", "1", "--f", "2"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "[[1,4],[2,3]]");

    let out = run(&["classes", "--p", "5", "--j", "2", "--f", "2"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("[[1,24],[2,23],"));
    let v = stdout_json(&out);
    assert_eq!(v.as_array().unwrap().len(), 10);

    let out = run(&["classes", "--p", "3", "--j", "1", "--f", "2"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "[[1],[2]]");

    let out = run(&["classes", "--p", "5", "--j", "0", "--f", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generate_preset() {
    let path = tmp("xiao-preset.txt");
    let out = run(&[
        "generate",
        "--preset",
        "xiao",
        "--p",
        "5",
        "--r",
        "2",
        "--f",
        "2",
        "--b",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["N"], 25);
    assert_eq!(v["weight"], 13);
    let line = std::fs::read_to_string(&path).unwrap();
    assert_eq!(line.trim().len(), 25);
    std::fs::remove_file(&path).ok();
}

#[test]
fn generate_from_spec_file_reproduces_reference_bits() {
    let spec = tmp("ref-spec.json");
    std::fs::write(
        &spec,
        r#"{"p":11,"r":2,"f":5,"g":2,"X":[[0,1,2,3,4],[0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24]]}"#,
    )
    .unwrap();
    let seq = tmp("ref-seq.txt");
    let out = run(&[
        "generate",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        seq.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["weight"], 61);
    let line = std::fs::read_to_string(&seq).unwrap();
    assert_eq!(line.trim(), REFERENCE_BITS_P11_R2);
    std::fs::remove_file(&spec).ok();
    std::fs::remove_file(&seq).ok();
}

#[test]
fn generate_empty_support() {
    let spec = tmp("empty-spec.json");
    std::fs::write(&spec, r#"{"p":5,"r":1,"f":2,"X":[[]]}"#).unwrap();
    let seq = tmp("empty-seq.txt");
    let out = run(&[
        "generate",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        seq.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&seq).unwrap().trim(), "10000");
    std::fs::remove_file(&spec).ok();
    std::fs::remove_file(&seq).ok();
}

#[test]
fn generate_rejects_malformed_spec() {
    let spec = tmp("bad-spec.json");
    std::fs::write(&spec, r#"{"p":5,"r":1,"f":2,"X":[[7]]}"#).unwrap();
    let seq = tmp("bad-seq.txt");
    let out = run(&[
        "generate",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        seq.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(&spec).ok();
}

#[test]
fn lc_all_engines_on_spec() {
    let spec = tmp("lc-all-spec.json");
    std::fs::write(
        &spec,
        r#"{"p":11,"r":2,"f":5,"X":[[0,1,2,3,4],[0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24]]}"#,
    )
    .unwrap();
    let out = run(&["lc", "--spec", spec.to_str().unwrap(), "--engine", "all"]);
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let v = stdout_json(&out);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 4);
    for report in reports {
        assert_eq!(report["L"], 111, "engine {}", report["engine"]);
        assert_eq!(report["N"], 121);
    }
    // Key order is part of the format.
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.starts_with(r#"[{"p":11,"r":2,"f":5,"b":null,"g":2,"N":121,"engine":"bm","L":111,"#)
    );
    std::fs::remove_file(&spec).ok();
}

#[test]
fn lc_lemma6_reports_deltas() {
    let spec = tmp("lc-l6-spec.json");
    std::fs::write(
        &spec,
        r#"{"p":5,"r":3,"f":2,"X":[[0,1],[0,2,4,6,8],[0,10,20,30,40]]}"#,
    )
    .unwrap();
    let out = run(&["lc", "--spec", spec.to_str().unwrap(), "--engine", "lemma6"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["L"], 25);
    assert_eq!(v["delta"], 1);
    assert_eq!(v["deltas"], serde_json::json!([1, 1, 0]));
    std::fs::remove_file(&spec).ok();
}

#[test]
fn lc_fast_engine_refusal_exits_2() {
    let out = run(&[
        "lc", "--preset", "xiao", "--p", "7", "--r", "2", "--f", "2", "--engine", "lemma6",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "lc", "--preset", "xiao", "--p", "1093", "--r", "1", "--f", "2", "--engine", "fiber",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lc_on_sequence_file() {
    let seq = tmp("lc-seq.txt");
    std::fs::write(&seq, "1110100\n").unwrap();
    let out = run(&["lc", "--seq", seq.to_str().unwrap(), "--engine", "all"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["L"], reports[1]["L"]);
    assert_eq!(reports[0]["p"], Value::Null);

    let out = run(&["lc", "--seq", seq.to_str().unwrap(), "--engine", "fiber"]);
    assert_eq!(out.status.code(), Some(1));

    // Even period: the gcd engine refuses as a parameter error.
    std::fs::write(&seq, "1010\n").unwrap();
    let out = run(&["lc", "--seq", seq.to_str().unwrap(), "--engine", "gcd"]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(&seq).ok();
}

#[test]
fn lc_requires_exactly_one_input() {
    let out = run(&["lc", "--engine", "bm"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_xiao_grid_agrees_with_conjecture() {
    let path = tmp("sweep-xiao.csv");
    let out = run(&[
        "sweep", "--p", "5,11,13", "--r-max", "2", "--f-policy", "2", "--support", "xiao",
        "--seed", "11", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 12); // 3 primes x 2 exponents x 2 shifts
    for line in rows {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[10], "true", "row: {line}");
        assert!(!cells[5].is_empty() && cells[5] == cells[9], "L_bm = L_conjecture in {line}");
    }
    std::fs::remove_file(&path).ok();
}

#[test]
fn sweep_is_deterministic() {
    let a = tmp("sweep-a.csv");
    let b = tmp("sweep-b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "sweep",
            "--p",
            "5,11",
            "--r-max",
            "2",
            "--f-policy",
            "all",
            "--support",
            "random",
            "--specs",
            "4",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let text_a = std::fs::read_to_string(&a).unwrap();
    let text_b = std::fs::read_to_string(&b).unwrap();
    assert_eq!(text_a, text_b);
    assert!(text_a.starts_with("# gencyclo sweep seed=42"));
    assert!(text_a.lines().nth(1).unwrap().starts_with("p,r,f,b,g,L_bm"));
    std::fs::remove_file(&a).ok();
    std::fs::remove_file(&b).ok();
}

#[test]
fn sweep_skips_fast_engines_when_assumptions_fail() {
    let path = tmp("sweep-p7.csv");
    let out = run(&[
        "sweep",
        "--p",
        "7",
        "--r-max",
        "1",
        "--f-policy",
        "2",
        "--support",
        "random",
        "--specs",
        "5",
        "--seed",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    for line in text.lines().skip(2) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[0], "7");
        assert!(
            !cells[5].is_empty() && cells[5] == cells[6],
            "bm and gcd populated and equal"
        );
        assert!(
            cells[7].is_empty() && cells[8].is_empty(),
            "fast engines skipped"
        );
        assert_eq!(cells[10], "true");
    }
    std::fs::remove_file(&path).ok();
}

#[test]
fn sweep_rejects_bad_grid() {
    let out = run(&["sweep", "--p", "9", "--r-max", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["sweep", "--p", "5", "--r-max", "1", "--f-policy", "weird"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for sub in ["info", "classes", "generate", "lc", "sweep"] {
        assert!(text.contains(sub));
    }
}
