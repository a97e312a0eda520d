use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn dsw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dsw")).args(args).output().unwrap()
}

fn dsw_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dsw"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn identical_columns_give_zero_distance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("same.csv");
    let rows: String = (0..30).map(|k| format!("{0},{0}\n", (k as f64 * 0.3).sin())).collect();
    fs::write(&path, format!("left,right\n{rows}")).unwrap();
    let doc = json(&dsw(&["compare", path.to_str().unwrap()]));
    assert_eq!(num(&doc["dsw"]["distance"]), 0.0);
    assert_eq!(doc["dsw"]["segments"].as_array().unwrap().len(), 1);
    assert_eq!(doc["inputs"]["series"][0]["name"], "left");
}

#[test]
fn zero_tolerance_matches_dtw() {
    let doc = json(&dsw(&[
        "compare",
        "--fixture",
        "umd-like",
        "--gamma-abs",
        "0",
        "--gamma-rel",
        "0",
    ]));
    assert!((num(&doc["dsw"]["distance"]) - num(&doc["dtw"]["distance"])).abs() <= 1e-9);
}

#[test]
fn documents_satisfy_distance_inequalities() {
    for fixture in ["ecg-noisy-tail", "umd-like", "pause"] {
        for criterion in ["local", "global"] {
            let doc = json(&dsw(&["compare", "--fixture", fixture, "--merge-criterion", criterion]));
            let (opt, simp) = (num(&doc["dtw"]["distance"]), num(&doc["dsw"]["distance"]));
            let t = &doc["tolerances"];
            assert!(simp >= opt - 1e-9);
            assert!(simp <= opt * (1.0 + num(&t["gamma_rel"])) + num(&t["gamma_abs"]) + 1e-9);
        }
    }
}

#[test]
fn ucr_input_from_stdin_with_pair_selection() {
    let input = "a\t0\t1\t2\t1\t0\nb\t5\t5\t5\nc\t0\t0\t1\t2\t1\t0\n";
    let doc = json(&dsw_stdin(
        &["compare", "-", "--format", "ucr-tsv", "--pair", "1,3"],
        input,
    ));
    assert_eq!(doc["inputs"]["series"][0]["name"], "a");
    assert_eq!(doc["inputs"]["series"][1]["name"], "c");
    assert_eq!(doc["inputs"]["series"][1]["length"], 6);
}

#[test]
fn kappa_infinities_are_strings() {
    let input = "a\t0\t0\t0\t5\t5\nb\t0\t5\n";
    let doc = json(&dsw_stdin(
        &[
            "compare",
            "-",
            "--format",
            "ucr-tsv",
            "--gamma-abs",
            "0",
            "--gamma-rel",
            "0",
        ],
        input,
    ));
    let kappas: Vec<&Value> = doc["dsw"]["segments"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| &s["kappa"])
        .collect();
    assert!(kappas.iter().any(|k| k.as_str() == Some("-inf")), "{kappas:?}");
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    fs::write(&path, "1,2\n3,4\n5,abc\n").unwrap();
    let out = dsw(&["compare", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(3,2)"));

    assert_eq!(dsw(&["compare", "/nonexistent/file.csv"]).status.code(), Some(2));
    assert_eq!(dsw(&["compare", "--fixture", "nope"]).status.code(), Some(2));
    assert_eq!(
        dsw(&["compare", "--fixture", "pause", "--cost-lambda", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        dsw(&["compare", "--fixture", "pause", "--gamma-rel", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        dsw(&["compare", "--fixture", "pause", "--stride", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(dsw(&["compare", "--bogus"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_fault_fails() {
    let quick = ["--oracle-cases", "30", "--bound-cases", "45", "--raster-limit", "8"];
    let ok = dsw(&[&["verify"], &quick[..]].concat());
    assert_eq!(ok.status.code(), Some(0));
    let text = String::from_utf8_lossy(&ok.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 4, "{text}");
    assert!(text.contains("worst_slack="));

    let bad = dsw(&[&["verify", "--inject-fault"], &quick[..]].concat());
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("FAIL bound"));
}

#[test]
fn fixtures_round_trip_through_compare() {
    let dir = tempfile::tempdir().unwrap();
    let out = dsw(&["fixtures", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let file = dir.path().join("pause.tsv");
    let from_file = json(&dsw(&["compare", file.to_str().unwrap(), "--format", "ucr-tsv"]));
    let generated = json(&dsw(&["compare", "--fixture", "pause"]));
    assert_eq!(from_file["dsw"], generated["dsw"]);
    assert_eq!(from_file["dtw"], generated["dtw"]);
}

#[test]
fn compare_is_deterministic_and_renders() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| {
        let target = dir.path().join(sub);
        let out = dsw(&[
            "compare",
            "--fixture",
            "sine-compression",
            "--stride",
            "4",
            "--render",
            target.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        (out.stdout, target)
    };
    let (a, da) = run("a");
    let (b, db) = run("b");
    assert_eq!(a, b);
    for view in ["segmented.svg", "point-to-point.svg", "matrix.svg"] {
        let (x, y) = (
            fs::read_to_string(da.join(view)).unwrap(),
            fs::read_to_string(db.join(view)).unwrap(),
        );
        assert_eq!(x, y);
        roxmltree::Document::parse(&x).unwrap();
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("doc.json");
    let out = dsw(&["compare", "--fixture", "pause", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert!(doc["band"]["max_alpha"].is_number());
}
