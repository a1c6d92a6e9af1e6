use std::process::Command;

use ringcodes::cli::{execute, EXIT_BUDGET, EXIT_OK, EXIT_USAGE};
use ringcodes::ring_i::{addition_table, multiplication_table, parse_table};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = execute(std::iter::once("ringcodes").chain(args.iter().copied()), &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn json(args: &[&str]) -> serde_json::Value {
    let r = run(args);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    serde_json::from_str(&r.out).unwrap()
}

#[test]
fn construct_t1_example() {
    let r = run(&["construct", "--variant", "T1", "--m", "6", "--M", "2,3", "--N", "4,5"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("defining set: |D| = 16"), "{}", r.out);
    assert!(r.out.contains("Lee weight enumerator: X^32 + 3X^16Y^16"));
    assert!(r.out.contains("Gray image: [32, 2, 16]"));
}

#[test]
fn construct_t2_m9_example() {
    let doc = json(&[
        "construct",
        "--variant",
        "T2",
        "--m",
        "9",
        "--M",
        "1,2,3,4,7,8,9",
        "--N",
        "5,6",
        "--format",
        "structured",
    ]);
    assert_eq!(doc["lee_enumerator"], "X^3072 + 508X^1536Y^1536 + 3X^1024Y^2048");
    assert_eq!(doc["gray_params"], serde_json::json!({"n": 3072, "k": 9, "d": 1536}));
}

#[test]
fn construct_degenerate_trivial_complexes() {
    let r = run(&["construct", "--variant", "T1", "--m", "3", "--M", "", "--N", ""]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("|D| = 1"));
    assert!(r.out.contains("[2, 0, -]"));
    assert!(r.out.contains("degenerate: zero code"));
    let r = run(&["construct", "--variant", "T5", "--m", "2", "--M", "1,2", "--N", "1,2"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("degenerate: empty defining set"));
}

#[test]
fn construct_dumps_codewords() {
    let doc = json(&[
        "construct",
        "--variant",
        "T3",
        "--m",
        "2",
        "--M",
        "1",
        "--N",
        "2",
        "--format",
        "structured",
        "--dump-codewords",
        "--dump-binary",
    ]);
    let words = doc["codewords"].as_array().unwrap();
    let binary = doc["binary_codewords"].as_array().unwrap();
    assert_eq!(words.len() as u64, doc["code_size"].as_u64().unwrap());
    assert_eq!(words.len(), binary.len());
    let n = doc["defining_set_length"].as_u64().unwrap() as usize;
    assert!(words.iter().all(|w| w.as_str().unwrap().len() == n));
    assert!(binary.iter().all(|w| w.as_str().unwrap().len() == 2 * n));
}

#[test]
fn structured_output_is_stable() {
    let args = ["analyze", "--variant", "T5", "--m", "3", "--M", "1", "--N", "2,3", "--format", "structured"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.code, EXIT_OK, "{}", first.out);
    assert_eq!(first.out, second.out);
    let doc: serde_json::Value = serde_json::from_str(&first.out).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["command"], "analyze");
}

#[test]
fn analyze_t2_m5_example() {
    let r = run(&["analyze", "--variant", "T2", "--m", "5", "--M", "1,2,3", "--N", "4"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.out);
    assert!(r.out.contains("minimal: yes"));
    assert!(r.out.contains("self-orthogonal: yes"));
    assert!(r.out.contains("sum at d = 93, sum at d+1 = 98, n = 96 -> certified-optimal"), "{}", r.out);
}

#[test]
fn analyze_t4_example_reports_without_optimality_expectation() {
    let doc =
        json(&["analyze", "--variant", "T4", "--m", "5", "--M", "2,3,4", "--N", "1,2,4,5", "--format", "structured"]);
    let report = &doc["report"];
    assert_eq!(report["minimal"]["result"], "yes-exhaustive");
    assert_eq!(report["self_orthogonal"]["result"], "yes-direct");
    assert!(report["griesmer"]["status"].is_string());
    let checks: Vec<&str> =
        report["expectations"].as_array().unwrap().iter().map(|e| e["check"].as_str().unwrap()).collect();
    assert!(!checks.contains(&"theta-optimality"));
}

#[test]
fn analyze_one_weight_reports_simplex() {
    let doc = json(&[
        "analyze",
        "--variant",
        "T3",
        "--m",
        "3",
        "--M",
        "1,2,3",
        "--N",
        "1,2",
        "--analyses",
        "simplex,gray",
        "--format",
        "structured",
    ]);
    let simplex = &doc["report"]["simplex"];
    assert_eq!(simplex["result"], "replicated");
    assert_eq!(
        (simplex["k"].as_u64(), simplex["r"].as_u64(), simplex["zero_columns"].as_u64()),
        (Some(3), Some(8), Some(8))
    );
}

#[test]
fn every_worked_example_exits_zero() {
    let cases: [[&str; 4]; 6] = [
        ["T1", "6", "2,3", "4,5"],
        ["T2", "5", "1,2,3", "4"],
        ["T2", "9", "1,2,3,4,7,8,9", "5,6"],
        ["T3", "3", "1,2,3", "1,2"],
        ["T4", "5", "2,3,4", "1,2,4,5"],
        ["T5", "4", "2,3,4", "1,2,4"],
    ];
    for [variant, m, ms, ns] in cases {
        let r = run(&["analyze", "--variant", variant, "--m", m, "--M", ms, "--N", ns]);
        assert_eq!(r.code, EXIT_OK, "{variant} m={m}: {}{}", r.out, r.err);
    }
}

#[test]
fn verify_small_sweep_matches() {
    let doc = json(&["verify", "--m", "1..3", "--variants", "T1,T2,T3,T4,T5", "--format", "structured"]);
    let summary = &doc["summary"];
    assert_eq!(summary["checked"], 5 * (4 + 16 + 64));
    assert_eq!(summary["mismatched"], 0);
    assert_eq!(summary["checked"], summary["matched"]);
}

#[test]
fn verify_sampled() {
    let r = run(&["verify", "--m", "5", "--variants", "T2", "--sample", "20"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.out);
    assert!(r.out.starts_with("checked 20 (M, N) instances: 20 match, 0 mismatch"), "{}", r.out);
}

#[test]
fn usage_errors() {
    for args in [
        &["verify", "--m", "1..2", "--variants", ""][..],
        &["verify", "--m", "3..1"],
        &["verify", "--m", "0"],
        &["construct", "--variant", "T9", "--m", "3"],
        &["construct", "--variant", "T1", "--m", "3", "--M", "4"],
        &["construct", "--variant", "T1", "--m", "3", "--M", "x"],
        &["construct", "--variant", "T1", "--m", "3", "--budget", "0"],
        &["analyze", "--variant", "T1", "--m", "3", "--analyses", "bogus"],
        &["analyze", "--variant", "T1", "--m", "3", "--analyses", ""],
        &["construct", "--variant", "T1"],
        &["frobnicate"],
    ] {
        let r = run(args);
        assert_eq!(r.code, EXIT_USAGE, "{args:?}: {}{}", r.out, r.err);
        assert!(!r.err.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let r = run(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("construct"));
}

#[test]
fn budget_flag_exceeded() {
    let r = run(&["construct", "--variant", "T1", "--m", "6", "--M", "2,3", "--N", "4,5", "--budget", "5"]);
    assert_eq!(r.code, EXIT_BUDGET);
    assert!(r.err.contains("budget"));
}

#[test]
fn budget_env_var_through_binary() {
    let bin = env!("CARGO_BIN_EXE_ringcodes");
    let args = ["construct", "--variant", "T1", "--m", "6", "--M", "2,3", "--N", "4,5"];
    let status = Command::new(bin).args(args).env("RINGCODES_WORK_BUDGET", "5").output().unwrap().status;
    assert_eq!(status.code(), Some(EXIT_BUDGET));
    let status = Command::new(bin).args(args).env("RINGCODES_WORK_BUDGET", "1000000").output().unwrap().status;
    assert_eq!(status.code(), Some(EXIT_OK));
    let status = Command::new(bin).args(args).env("RINGCODES_WORK_BUDGET", "many").output().unwrap().status;
    assert_eq!(status.code(), Some(EXIT_USAGE));
}

#[test]
fn tables_match_and_round_trip() {
    let r = run(&["tables"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("+ | 0 a b c"));
    assert!(r.out.contains("a | a 0 c b"));
    assert!(r.out.contains("b | 0 0 0 0"));
    let blocks: Vec<&str> = r.out.split("\n\n").collect();
    assert_eq!(blocks.len(), 2);
    assert_eq!(parse_table(blocks[0]).unwrap(), ('+', addition_table()));
    assert_eq!(parse_table(blocks[1]).unwrap(), ('*', multiplication_table()));
}

#[test]
fn run_toml_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("jobs.toml");
    std::fs::write(
        &path,
        r#"
format = "structured"
budget = 100000000

[[jobs]]
variant = "T1"
m = 6
M = "2,3"
N = "4,5"
analyses = ["weights", "gray", "minimal", "self-orthogonal"]

[[jobs]]
variant = "T2"
m = 5
M = [1, 2, 3]
N = [4]
"#,
    )
    .unwrap();
    let doc = json(&["run", "--config", path.to_str().unwrap()]);
    assert_eq!(doc["schema_version"], 1);
    let jobs = doc["jobs"].as_array().unwrap();
    assert_eq!(jobs.len(), 2);
    assert_eq!(jobs[0]["lee_enumerator"], "X^32 + 3X^16Y^16");
    assert!(jobs[0]["griesmer"].is_null());
    assert_eq!(jobs[1]["griesmer"]["status"], "certified-optimal");

    let r = run(&["run", "--config", path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("T2 m=5 M={1,2,3} N={4} | [96, 5, 48]"), "{}", r.out);
}

#[test]
fn run_json_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("jobs.json");
    std::fs::write(&path, r#"{"jobs": [{"variant": "t5", "m": 4, "M": "2,3,4", "N": "1,2,4"}]}"#).unwrap();
    let r = run(&["run", "--config", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK, "{}{}", r.out, r.err);
    assert!(r.out.contains("X^384 + 14X^192Y^192 + X^128Y^256"));
}

#[test]
fn run_rejects_invalid_configs() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("zero.toml", "budget = 0\n[[jobs]]\nvariant = \"T1\"\nm = 2\n"),
        ("index.toml", "[[jobs]]\nvariant = \"T1\"\nm = 2\nM = \"3\"\n"),
        ("analysis.json", r#"{"jobs": [{"variant": "T1", "m": 2, "analyses": ["nope"]}]}"#),
        ("broken.toml", "jobs = 3"),
    ] {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        let r = run(&["run", "--config", path.to_str().unwrap()]);
        assert_eq!(r.code, EXIT_USAGE, "{name}: {}{}", r.out, r.err);
    }
    let r = run(&["run", "--config", dir.path().join("missing.toml").to_str().unwrap()]);
    assert_eq!(r.code, EXIT_USAGE);
}
