use std::process::Command;

use saito::cli;
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("saito").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    Run { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout))
}

#[test]
fn natural_report_shape() {
    let r = run(&["natural", "--group", "Z5"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "natural");
    assert_eq!(v["group"], "Z5");
    assert_eq!(v["data"]["Btilde"]["(1,1,1)"], "5/u1");
    assert_eq!(v["data"]["r"], "1/5");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["cs", "--group", "B2"]);
    let b = run(&["cs", "--group", "B2"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn compare_exit_polarity() {
    let r = run(&["compare", "--group", "G3_1_2"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("check failed: difference"), "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["data"]["connections_equal"], false);
    assert!(v["data"]["witness"].is_string());
    assert_eq!(run(&["compare", "--group", "G3_1_2", "--expect", "differ"]).code, 0);
    assert_eq!(run(&["compare", "--group", "B2"]).code, 0);
    assert_eq!(run(&["compare", "--group", "B2", "--expect", "differ"]).code, 1);
}

#[test]
fn out_file_and_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("g312.json");
    std::fs::write(
        &spec,
        r#"{"schema": 1, "name": "G3_1_2", "rank": 2, "invariants": ["u1^3*u2^3", "u1^3 + u2^3"], "degrees": [6, 3]}"#,
    )
    .unwrap();
    let out = dir.path().join("report.json");
    let r = run(&["natural", "--spec", spec.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    let from_file: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let from_catalog = json(&run(&["natural", "--group", "G3_1_2"]));
    assert_eq!(from_file["data"]["Btilde"], from_catalog["data"]["Btilde"]);
}

#[test]
fn text_format() {
    let r = run(&["verify", "--group", "Z5", "--axioms", "ass-natural", "--format", "text"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("group: Z5\ncommand: verify\n"));
    assert!(r.stdout.contains("[pass] ass-natural/ass4"), "{}", r.stdout);
}

#[test]
fn input_errors_exit_2() {
    let r = run(&["natural", "--group", "A3", "--max-degree", "3"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("degree guard"), "{}", r.stderr);

    assert_eq!(run(&["natural", "--group", "Q7"]).code, 2);
    assert_eq!(run(&["verify", "--group", "Z5", "--axioms", "nope"]).code, 2);
    assert_eq!(run(&["natural", "--group", "Z5", "--max-degree", "0"]).code, 2);
    assert_eq!(run(&["natural", "--group", "Z5", "--spec", "x.json"]).code, 2);
    assert_eq!(run(&["cs", "--group", "G3_3_3"]).code, 2);

    let r = run(&["catalog", "--group", "G12"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("exceptional"));

    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("bad.json");
    std::fs::write(&spec, r#"{"rank": 2, "invariants": ["u1^3*u2^3", "u1^3 + u2 u2"]}"#).unwrap();
    let r = run(&["natural", "--spec", spec.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("invariant x2: 1:11"), "{}", r.stderr);

    let r = run(&["natural", "--spec", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(r.code, 2);
}

#[test]
fn help_exits_0() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("--max-degree"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_saito");
    let ok = Command::new(bin).args(["classify", "--group", "B2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["data"]["metric"]["admits_compatible_metric"], true);
    let fail = Command::new(bin).args(["compare", "--group", "G3_1_3"]).output().unwrap();
    assert_eq!(fail.status.code(), Some(1));
    let bad = Command::new(bin).arg("bogus").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
