//! End-to-end tests of the binary: exit codes, frozen output values, and
//! byte-level determinism.

use std::io::Write;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_prym-hitchin"))
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let output = bin().args(args).output().expect("binary runs");
    Run {
        code: output.status.code().expect("no signal"),
        stdout: String::from_utf8(output.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(output.stderr).expect("utf-8 stderr"),
    }
}

fn scenario_file(body: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    file.write_all(body.as_bytes()).expect("write scenario");
    file
}

const MEMBERSHIP_SCENARIO: &str = r#"{
  "version": "1",
  "cover": {"g_Y": 2, "n": 1, "etale": false},
  "tasks": [
    {"kind": "germ",
     "germ": {"r": 2, "sections": [["2"], ["1", "0", "1"]],
              "chart": "ramified", "linearization": "positive"},
     "query": {"membership": "wminus"}},
    {"kind": "higgs",
     "phi": [[["0","0","1"],["0","1"]],[["0","1"],["0","0","1"]]],
     "structure": {"kind": "alternating",
                   "j": [[["0"],["1"]],[["-1"],["0"]]]}},
    {"kind": "genus", "r": 2, "scenario": "anti_alternating"},
    {"kind": "types", "r": 2, "d": 0},
    {"kind": "oracle", "scenario": {"family": "anti_invariant",
                                    "kind": "minus", "etale": false,
                                    "r_even": true}}
  ]
}"#;

#[test]
fn dims_full_table_frozen_values() {
    let r = run(&["dims", "--gy", "2", "--n", "1", "--r", "2", "--space", "all"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    for line in [
        "| W+ | 7 |",
        "| U+ | 7 |",
        "| P+ | 7 |",
        "| W- | 5 |",
        "| U- | 5 |",
        "| Wtau(k_p=0) | 6 |",
    ] {
        assert!(r.stdout.contains(line), "missing {line:?} in:\n{}", r.stdout);
    }
    assert!(!r.stdout.contains("FAIL"));
}

#[test]
fn dims_empty_minus_locus_exits_65() {
    let r = run(&["dims", "--gy", "2", "--n", "1", "--r", "3", "--kind", "minus"]);
    assert_eq!(r.code, 65);
    assert!(r.stderr.contains("EmptyLocus"), "stderr: {}", r.stderr);
}

#[test]
fn dims_inadmissible_cover_exits_65() {
    let r = run(&["dims", "--gy", "0", "--n", "0", "--r", "2"]);
    assert_eq!(r.code, 65);
    assert!(r.stderr.contains("InadmissibleCover"), "stderr: {}", r.stderr);
}

#[test]
fn unknown_flag_exits_64() {
    let r = run(&["dims", "--gy", "2", "--n", "1", "--r", "2", "--bogus"]);
    assert_eq!(r.code, 64);
}

#[test]
fn wtau_without_kp_exits_64() {
    let r = run(&["dims", "--gy", "2", "--n", "1", "--r", "2", "--space", "wtau"]);
    assert_eq!(r.code, 64);
    assert!(r.stderr.contains("--kp"));
}

#[test]
fn analyze_runs_frozen_scenario() {
    let file = scenario_file(MEMBERSHIP_SCENARIO);
    let r = run(&["analyze", file.path().to_str().unwrap()]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    let results: Value = serde_json::from_str(&r.stdout).expect("json output");
    let results = results.as_array().expect("array of task results");
    assert_eq!(results.len(), 5);

    assert_eq!(results[0]["member"], Value::Bool(true));
    assert_eq!(results[0]["certificate"], serde_json::json!(["1", "1"]));

    assert_eq!(results[1]["structure"], "alternating");
    assert_eq!(results[1]["parity_flags"], serde_json::json!([true, true]));
    assert_eq!(results[1]["certificate"], serde_json::json!(["0", "1"]));

    assert_eq!(results[2]["g_spectral"], 13);
    assert_eq!(results[2]["g_normalized"], 11);
    assert_eq!(results[2]["prym_dim"], 5);

    assert_eq!(results[3]["count"], 3);

    assert_eq!(results[4], serde_json::json!({"components": 2}));
}

#[test]
fn analyze_empty_tasks_prints_empty_report() {
    let file = scenario_file(r#"{"version":"1","cover":{"g_Y":2,"n":1,"etale":false},"tasks":[]}"#);
    let r = run(&["analyze", file.path().to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), "[]");
}

#[test]
fn analyze_invalid_germ_reports_pointer() {
    let file = scenario_file(
        r#"{"version":"1","cover":{"g_Y":2,"n":1,"etale":false},
            "tasks":[{"kind":"germ",
                      "germ":{"r":2,"sections":[["2"],["1","1"]],
                              "chart":"ramified","linearization":"positive"},
                      "query":"report"}]}"#,
    );
    let r = run(&["analyze", file.path().to_str().unwrap()]);
    assert_eq!(r.code, 65);
    assert!(r.stderr.contains("/tasks/0"), "stderr: {}", r.stderr);
    assert!(r.stderr.contains("SectionParity"), "stderr: {}", r.stderr);
}

#[test]
fn analyze_unsupported_version_exits_65() {
    let file = scenario_file(r#"{"version":"9","cover":{"g_Y":2,"n":1,"etale":false},"tasks":[]}"#);
    let r = run(&["analyze", file.path().to_str().unwrap()]);
    assert_eq!(r.code, 65);
    assert!(r.stderr.contains("/version"), "stderr: {}", r.stderr);
}

#[test]
fn analyze_missing_file_exits_65() {
    let r = run(&["analyze", "/nonexistent/scenario.json"]);
    assert_eq!(r.code, 65);
}

#[test]
fn analyze_jobs_do_not_change_bytes() {
    let file = scenario_file(MEMBERSHIP_SCENARIO);
    let path = file.path().to_str().unwrap();
    let serial = run(&["analyze", path]);
    let parallel = run(&["analyze", path, "--jobs", "4"]);
    assert_eq!(serial.code, 0);
    assert_eq!(parallel.code, 0);
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn analyze_is_deterministic_across_runs() {
    let file = scenario_file(MEMBERSHIP_SCENARIO);
    let path = file.path().to_str().unwrap();
    let first = run(&["analyze", path, "--format", "csv"]);
    let second = run(&["analyze", path, "--format", "csv"]);
    assert_eq!(first.stdout, second.stdout);
    assert!(first.stdout.starts_with("task,kind,result"));
}

#[test]
fn sweep_default_grid_passes() {
    let r = run(&["sweep", "--gy", "1..5", "--n", "1..6", "--r", "1..8", "--seed", "42"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert!(r.stdout.contains("seed: 42"));
    assert!(r.stdout.contains("all identities pass"), "stdout: {}", r.stdout);
}

#[test]
fn sweep_single_value_ranges() {
    let r = run(&["sweep", "--gy", "2", "--n", "1", "--r", "1..4"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("all identities pass"));
}

#[test]
fn sweep_grid_cap_exits_64() {
    let output = bin()
        .args(["sweep"])
        .env("PRYM_HITCHIN_MAX_GRID", "10")
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(64));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("GridTooLarge"), "stderr: {stderr}");
}

#[test]
fn sweep_pfaffian_suite_passes() {
    let r = run(&["sweep", "--pfaffian-trials", "40", "--max-dim", "8", "--seed", "7"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert!(r.stdout.contains("40 trials pass"), "stdout: {}", r.stdout);
}

#[test]
fn sweep_orbit_table() {
    let r = run(&["sweep", "--orbits", "--n", "1..6"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("| 6 | 2 | 2048 |"), "stdout: {}", r.stdout);
    assert!(r.stdout.contains("orbit count 2 at every n"));
}

#[test]
fn sweep_bad_range_exits_64() {
    let r = run(&["sweep", "--gy", "5..1"]);
    assert_eq!(r.code, 64);
}

#[test]
fn sweep_jobs_do_not_change_bytes() {
    let serial = run(&["sweep", "--gy", "1..3", "--n", "1..3", "--r", "1..4", "--jobs", "1"]);
    let parallel = run(&["sweep", "--gy", "1..3", "--n", "1..3", "--r", "1..4", "--jobs", "4"]);
    assert_eq!(serial.code, 0);
    assert_eq!(serial.stdout, parallel.stdout);
}
