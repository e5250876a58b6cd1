//! End-to-end tests of the command line front end: golden outputs for the
//! analyze examples, exit codes, and the seed fallback.

use serde_json::{json, Value};
use std::process::Command;

fn rssw() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rssw"))
}

fn run_json(args: &[&str]) -> Value {
    let out = rssw().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn analyze_golden_k3bar() {
    let v = run_json(&["analyze", "2E8 # 3H"]);
    let expected = json!({
        "provenance": {
            "tool": "rssw",
            "version": env!("CARGO_PKG_VERSION"),
            "input": "2E8 # 3H"
        },
        "e8_blocks": 2,
        "h_blocks": 3,
        "b2": 22,
        "sigma": 16,
        "b2_plus": 19,
        "b2_minus": 3,
        "chi": 24,
        "index_rs": "38",
        "index_dirac": "-2",
        "virtual_dim": "56",
        "k": 19,
        "m": 19,
        "feasibility": {"verdict": "excluded", "reason": "trace_fraction"},
        "margin_15_4": "-40",
        "margin_15_4_vacuous": false,
        "furuta_margin": "0",
        "window_lower_ok": false,
        "window_upper_ok": true,
        "compactness_excluded": true,
        "conclusion": "compactness excluded: the moduli space is non-compact for every metric, hence non-empty"
    });
    assert_eq!(v, expected);
}

#[test]
fn analyze_golden_split_summand() {
    let v = run_json(&["analyze", "2E8 # 2H"]);
    assert_eq!(v["margin_15_4"], "-42");
    assert_eq!(v["furuta_margin"], "-2");
    assert_eq!(v["b2"], 20);
    assert_eq!(v["sigma"], 16);
    assert_eq!(v["compactness_excluded"], true);
}

#[test]
fn analyze_golden_null_signature() {
    let v = run_json(&["analyze", "3H"]);
    assert_eq!(v["k"], 0);
    assert_eq!(v["feasibility"]["verdict"], "not_excluded");
    assert_eq!(v["feasibility"]["reason"], "k_zero");
    assert_eq!(v["margin_15_4_vacuous"], true);
    assert_eq!(v["compactness_excluded"], false);
}

#[test]
fn analyze_text_format() {
    let out = rssw()
        .args(["--format", "text", "analyze", "K3bar"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("b2 / sigma / b2+    22 / 16 / 19"));
    assert!(text.contains("index (RS / Dirac)  38 / -2"));
}

#[test]
fn exit_code_2_on_parse_error() {
    let out = rssw().args(["analyze", "2Q8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("offset 1"));
    assert!(err.contains("unknown atom"));
}

#[test]
fn exit_code_3_on_hypothesis_violation() {
    // definite intersection form
    let out = rssw().args(["analyze", "2E8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    // signature not divisible by 16
    let out = rssw().args(["analyze", "1E8 # 2H"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn index_subcommand() {
    let v = run_json(&[
        "index", "--sigma", "16", "--chi", "24", "--c1sq", "0",
    ]);
    assert_eq!(v["index_rs"], "38");
    assert_eq!(v["index_dirac"], "-2");
    // fractional output stays exact
    let v = run_json(&["index", "--sigma", "8", "--chi", "11", "--c1sq", "1"]);
    assert_eq!(v["index_rs"], "43/2");
    // negative invariants pass through argument parsing
    let v = run_json(&["index", "--sigma", "-32", "--chi", "10", "--c1sq", "3"]);
    assert_eq!(v["index_rs"], "-137/2");
}

#[test]
fn feasibility_subcommand() {
    let v = run_json(&["feasibility", "--k", "1", "--m", "2"]);
    assert_eq!(v["feasibility"]["verdict"], "excluded");
    assert_eq!(v["feasibility"]["reason"], "parity");
    let v = run_json(&["feasibility", "--k", "1", "--m", "3", "--r", "2", "--s", "1"]);
    assert_eq!(v["feasibility"]["verdict"], "not_excluded");
}

#[test]
fn repring_eval_subcommand() {
    let v = run_json(&["repring", "eval", "(2-h)^3(1-d)"]);
    assert_eq!(v["normal_form"], "8 - 8d");
    assert_eq!(v["char_at_j"], "16");
    assert_eq!(v["char_at_i"], "0");
    let v = run_json(&["repring", "eval", "3 + 2d - 7h"]);
    assert_eq!(v["char_at_j"], "1");
    assert_eq!(v["char_on_circle"], "5 - 7c");

    let out = rssw().args(["repring", "eval", "2x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_equivariance_small_run() {
    let v = run_json(&["verify-equivariance", "--samples", "2", "--seed", "5"]);
    let rows = v["identities"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert_eq!(row["checks"], 100);
        assert_eq!(row["all_pass"], true);
    }
}

#[test]
fn kuranishi_demo_small_run() {
    let v = run_json(&[
        "kuranishi", "demo", "--seed", "9", "--dim-c", "14", "--dim-r", "12",
        "--gamma", "0.5", "--cutoff", "1.3",
    ]);
    assert_eq!(v["dim_c"], 14);
    assert!(v["measured_gamma"].as_f64().unwrap() <= 0.5);
    assert_eq!(v["sandwich_ok"], true);
    assert_eq!(v["high_dq_monotone"], true);
    assert_eq!(v["planted"]["biconditional_holds"], true);
}

#[test]
fn seed_falls_back_to_environment() {
    let direct = rssw()
        .args(["verify-equivariance", "--samples", "1", "--seed", "42"])
        .output()
        .unwrap();
    let via_env = rssw()
        .args(["verify-equivariance", "--samples", "1"])
        .env("RSSW_SEED", "42")
        .output()
        .unwrap();
    assert!(direct.status.success() && via_env.status.success());
    assert_eq!(direct.stdout, via_env.stdout);
}

#[test]
fn json_report_round_trips() {
    let v = run_json(&["analyze", "K3 # 2S2xS2"]);
    // re-serialize and re-parse: bit-identical value tree
    let text = serde_json::to_string(&v).unwrap();
    let again: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v, again);
    assert_eq!(v["sigma"], -16);
    assert_eq!(v["b2"], 26);
}
