use std::process::{Command, Output};

use serde_json::Value;

fn adjoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adjoint")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strip_wall_times(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("wall_time");
            map.values_mut().for_each(strip_wall_times);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_wall_times),
        _ => {}
    }
}

#[test]
fn verify_all_small_prime_passes() {
    let out = adjoint(&["verify", "all", "--p", "3", "--c", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    let records = doc["records"].as_array().unwrap();
    assert!(records.len() >= 30, "{} records", records.len());
    for r in records {
        for key in ["id", "paper_anchor", "status", "lhs", "rhs", "delta", "wall_time"] {
            assert!(r.get(key).is_some(), "record lacks {key}");
        }
        assert_eq!(r["status"], "pass", "{r}");
    }
    assert_eq!(doc["schema_version"], "1.0.0");
}

#[test]
fn whittaker_table_is_csv() {
    let out = adjoint(&["table", "whittaker", "--m-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(reader.headers().unwrap(), vec!["c", "m", "n", "I", "W"]);
    // c ∈ {1, 2} and 0 ≤ m, n ≤ 4.
    assert_eq!(reader.records().count(), 2 * 25);
}

#[test]
fn oracle_suite_at_k_two() {
    let out = adjoint(&["verify", "oracle", "--p", "5", "--c", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let concordance: Vec<&Value> =
        doc["records"].as_array().unwrap().iter().filter(|r| r["id"].as_str().unwrap().contains(".mu")).collect();
    assert_eq!(concordance.len(), 4 * 4);
    assert!(concordance.iter().all(|r| r["delta"].as_f64().unwrap() < 1e-8));
}

#[test]
fn single_oracle_job_reports_its_result() {
    let out = adjoint(&["oracle", "--p", "3", "--c", "1", "--m", "1", "--n", "0", "--t1", "0.6,0.8"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    for key in ["total", "parts", "error_estimate", "cells", "wall_time"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    assert!(doc["relative_delta"].as_f64().unwrap() < 1e-8);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(adjoint(&["verify", "nothing"]).status.code(), Some(2));
    assert_eq!(adjoint(&["verify", "oracle", "--p", "4"]).status.code(), Some(2));
    assert_eq!(adjoint(&["verify", "oracle", "--k", "0"]).status.code(), Some(2));
    assert_eq!(adjoint(&["oracle", "--p", "3", "--m", "0", "--n", "0", "--mu2-index", "0"]).status.code(), Some(2));
    assert_eq!(adjoint(&["zeta", "verify", "--case", "other"]).status.code(), Some(2));
    assert_eq!(adjoint(&["verify", "g2", "--config", "/nonexistent/adjoint.conf"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let args = ["lgroup", "verify", "--identity", "eta111", "--samples", "10", "--seed", "7"];
    let (mut a, mut b) = (json(&adjoint(&args)), json(&adjoint(&args)));
    strip_wall_times(&mut a);
    strip_wall_times(&mut b);
    assert_eq!(a, b);
}

#[test]
fn flags_override_config_file() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("adjoint-precedence.conf");
    std::fs::write(&path, "# test\np = 5\nc = 2\nk = 2\nformat = json\n").unwrap();
    let cfg = path.to_str().unwrap();

    let doc = json(&adjoint(&["verify", "oracle", "--config", cfg]));
    assert_eq!(doc["settings"]["primes"], serde_json::json!([5]));
    assert_eq!(doc["settings"]["k"], 2);

    let doc = json(&adjoint(&["verify", "oracle", "--config", cfg, "--p", "3", "--c", "1"]));
    assert_eq!(doc["settings"]["primes"], serde_json::json!([3]));
    assert_eq!(doc["settings"]["conductors"], serde_json::json!([1]));
    assert_eq!(doc["settings"]["k"], 2);

    let out = adjoint(&["verify", "g2", "--config", cfg, "--format", "csv"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("id,paper_anchor,status"));
}

#[test]
fn zeta_and_lgroup_subcommands() {
    for case in ["unram-chi", "both-ram", "ram-mu2"] {
        let out = adjoint(&["zeta", "verify", "--case", case]);
        assert_eq!(out.status.code(), Some(0), "{case}");
    }
    let out = adjoint(&["lgroup", "verify", "--identity", "satake-111", "--samples", "5", "--format", "markdown"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("| id |"));
}
