//! Drives the built binary: exit codes and JSON output.

use std::process::{Command, Output};

use serde_json::Value;

fn terada(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_terada"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    serde_json::from_str(text.lines().next().unwrap()).unwrap()
}

#[test]
fn faces_json_reports_fvector() {
    let out = terada(&["faces", "--n", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["n"], 3);
    assert_eq!(v["fvector"], serde_json::json!([1, 9, 21, 14]));
}

#[test]
fn jn_check_json() {
    let out = terada(&["jn", "--n", "3", "--check", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["n"], 3);
    assert_eq!(v["equal"], true);
    assert!(v["closed_factors"]
        .as_array()
        .is_some_and(|f| !f.is_empty()));
}

#[test]
fn neighbors_json_lists_juzus() {
    let out = terada(&["neighbors", "--n", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let far: Vec<&str> = v["non_touching"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    assert_eq!(far, ["0241356", "0314256"]);
}

#[test]
fn cohomology_check_passes() {
    let out = terada(&["cohomology", "--n", "3", "--check", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["two_pi_i_power"], 3);
}

#[test]
fn reciprocity_seeded_draws_are_reproducible() {
    let args = [
        "reciprocity",
        "--n",
        "2",
        "--seed",
        "7",
        "--draws",
        "5",
        "--json",
    ];
    let (first, second) = (terada(&args), terada(&args));
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = String::from_utf8(first.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert!(v["residual"].as_f64().unwrap() < 1e-8);
        assert_eq!(v["seed"], 7);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(terada(&["qcheck", "--n-max", "3"]).status.code(), Some(0));
    assert_eq!(terada(&["jn", "--n", "abc"]).status.code(), Some(2));
    assert_eq!(terada(&["jn", "--n", "0"]).status.code(), Some(2));
    assert_eq!(terada(&["nonsense"]).status.code(), Some(2));
    assert_eq!(terada(&["faces", "--n", "9"]).status.code(), Some(2));
    assert_eq!(terada(&["verify", "--n-max", "7"]).status.code(), Some(2));
    let pole = [
        "reciprocity",
        "--n",
        "1",
        "--alpha",
        "-1.0",
        "--beta",
        "0.3",
        "--gamma",
        "0.2",
    ];
    assert_eq!(terada(&pole).status.code(), Some(3));
    // a residual threshold nothing can meet
    let strict = [
        "reciprocity",
        "--n",
        "1",
        "--alpha",
        "0.3",
        "--beta",
        "0.4",
        "--gamma",
        "0.2",
    ];
    let mut args = strict.to_vec();
    args.extend(["--tol", "0"]);
    assert_eq!(terada(&args).status.code(), Some(1));
}
