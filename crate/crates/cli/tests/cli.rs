use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn elastinet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elastinet"))
        .args(args)
        .env_remove("ELASTINET_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn reference(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut full = vec!["reference"];
    full.extend_from_slice(args);
    let out = elastinet(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    fs::write(&path, &out.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn circle_energy_is_four_pi() {
    let tmp = TempDir::new().unwrap();
    let circle = reference(tmp.path(), "c.json", &["--shape", "circle", "--n", "128"]);
    let out = elastinet(&["energy", &circle, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let f = stdout_json(&out)["penalized"].as_f64().unwrap();
    assert!((f - 4.0 * std::f64::consts::PI).abs() < 1e-4, "{f}");
    let table = String::from_utf8(elastinet(&["energy", &circle]).stdout).unwrap();
    assert!(table.contains("12.5663"), "{table}");
}

#[test]
fn theta_rows_sum_to_total() {
    let tmp = TempDir::new().unwrap();
    let theta = reference(tmp.path(), "db.json", &["--shape", "double-bubble", "--n", "400"]);
    let report = stdout_json(&elastinet(&["energy", &theta, "--json"]));
    let rows = report["per_curve"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let sum: f64 = rows.iter().map(|r| r["penalized"].as_f64().unwrap()).sum();
    let total = report["penalized"].as_f64().unwrap();
    assert!((sum - total).abs() < 1e-12);
    assert!(((total - 18.4059) / 18.4059).abs() < 1e-3);
}

#[test]
fn parse_and_validation_errors_have_distinct_codes() {
    let tmp = TempDir::new().unwrap();
    let bad = tmp.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(elastinet(&["energy", bad.to_str().unwrap()]).status.code(), Some(2));
    let missing = tmp.path().join("missing.json");
    assert_eq!(elastinet(&["validate", missing.to_str().unwrap()]).status.code(), Some(2));

    // move one junction away from its curve ends
    let theta = reference(tmp.path(), "db.json", &["--shape", "double-bubble", "--n", "40"]);
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&theta).unwrap()).unwrap();
    doc["junctions"][0]["position"][0] = Value::from(0.25);
    let broken = tmp.path().join("broken.json");
    fs::write(&broken, doc.to_string()).unwrap();
    let b = broken.to_str().unwrap();
    for cmd in ["validate", "energy", "bounds"] {
        assert_eq!(elastinet(&[cmd, b]).status.code(), Some(3), "{cmd}");
    }
}

#[test]
fn bounds_hold_for_the_double_bubble_and_square() {
    let tmp = TempDir::new().unwrap();
    let theta = reference(tmp.path(), "db.json", &["--shape", "double-bubble", "--n", "200"]);
    let rows = stdout_json(&elastinet(&["bounds", &theta, "--json"]));
    let rows = rows.as_array().unwrap();
    assert!(rows.iter().all(|r| r["holds"].as_bool().unwrap()));
    assert!(rows.iter().any(|r| r["name"] == "theta_4pi"));

    let square = tmp.path().join("square.json");
    let side: Vec<[f64; 2]> = (0..40)
        .map(|i| {
            let t = (i % 10) as f64 / 10.0;
            match i / 10 {
                0 => [t, 0.0],
                1 => [1.0, t],
                2 => [1.0 - t, 1.0],
                _ => [0.0, 1.0 - t],
            }
        })
        .collect();
    let doc = serde_json::json!({ "kind": "closed", "curves": [{ "points": side }], "junctions": [] });
    fs::write(&square, doc.to_string()).unwrap();
    let out = elastinet(&["bounds", square.to_str().unwrap(), "--corner-threshold", "1.0", "--json"]);
    let gb = &stdout_json(&out)[0];
    assert_eq!(gb["name"], "gauss_bonnet");
    assert!(gb["rhs"].as_f64().unwrap().abs() < 1e-12);
    assert!(gb["lhs"].as_f64().unwrap().abs() < 1e-12);
    assert!(gb["holds"].as_bool().unwrap());
}

#[test]
fn minimize_writes_a_complete_run_directory() {
    let tmp = TempDir::new().unwrap();
    let drop = reference(tmp.path(), "drop.json", &["--shape", "teardrop", "--n", "300"]);
    let out_dir = tmp.path().join("run");
    let out = elastinet(&["minimize", &drop, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["result.json", "network.json", "trace.csv", "before.svg", "after.svg", "manifest.json"] {
        assert!(out_dir.join(name).exists(), "{name}");
    }
    let result: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("result.json")).unwrap()).unwrap();
    let f = result["final_energy"].as_f64().unwrap();
    assert!(((f - 10.60375) / 10.60375).abs() < 1e-2, "{f}");
    let trace = fs::read_to_string(out_dir.join("trace.csv")).unwrap();
    assert!(trace.starts_with("iter,F,E,L,grad_norm\n"));
}

#[test]
fn zero_iterations_return_the_input_and_seed_is_overridable() {
    let tmp = TempDir::new().unwrap();
    let drop = reference(tmp.path(), "drop.json", &["--shape", "teardrop", "--n", "60"]);
    let cfg = tmp.path().join("cfg.json");
    fs::write(&cfg, r#"{ "max_iters": 0, "seed": 5 }"#).unwrap();
    let out_dir = tmp.path().join("run");
    let out = Command::new(env!("CARGO_BIN_EXE_elastinet"))
        .args(["minimize", &drop, "--kind-config", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()])
        .env("ELASTINET_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let result: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("result.json")).unwrap()).unwrap();
    assert_eq!(result["termination"], "max_iters");
    let before: Value = serde_json::from_str(&fs::read_to_string(&drop).unwrap()).unwrap();
    let after: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("network.json")).unwrap()).unwrap();
    assert_eq!(before, after);
    let manifest: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 42);
    assert_eq!(manifest["command"], "minimize");

    fs::write(&cfg, r#"{ "max_iters": 0, "bogus": 1 }"#).unwrap();
    let out = elastinet(&["minimize", &drop, "--kind-config", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn minimize_is_deterministic() {
    let tmp = TempDir::new().unwrap();
    let drop = reference(tmp.path(), "drop.json", &["--shape", "teardrop", "--n", "80"]);
    let mut outputs = Vec::new();
    for run in ["a", "b"] {
        let dir = tmp.path().join(run);
        assert!(elastinet(&["minimize", &drop, "--out", dir.to_str().unwrap()]).status.success());
        outputs.push((
            fs::read(dir.join("trace.csv")).unwrap(),
            fs::read(dir.join("network.json")).unwrap(),
            fs::read(dir.join("result.json")).unwrap(),
        ));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn recovery_reports_the_inserted_length() {
    let tmp = TempDir::new().unwrap();
    let eight = reference(tmp.path(), "eight.json", &["--shape", "figure-eight", "--n", "200"]);
    for (n, want) in [("10", 0.3), ("1000", 3e-3)] {
        let dir = tmp.path().join(format!("rec{n}"));
        let out = elastinet(&["recovery", &eight, "--n", n, "--out", dir.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let defect = stdout_json(&out)["defect"].as_f64().unwrap();
        assert!((defect - want).abs() < 1e-6, "{defect}");
        let theta = dir.join("network.json");
        assert_eq!(elastinet(&["validate", theta.to_str().unwrap()]).status.code(), Some(0));
    }
    let theta = reference(tmp.path(), "db.json", &["--shape", "double-bubble", "--n", "40"]);
    assert_eq!(elastinet(&["recovery", &theta, "--n", "10"]).status.code(), Some(3));
}

#[test]
fn sweep_rows_match_closed_forms() {
    let out = elastinet(&["sweep", "--alpha1-grid", "90,120", "--alpha2-grid", "90,120", "--degrees"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = csv.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4);
    let energy = |r: &Vec<&str>| r[2].parse::<f64>().unwrap();
    assert!((energy(&rows[0]) - 14.42841).abs() < 1e-5);
    assert!((energy(&rows[3]) - 18.4059).abs() < 1e-4);
    // alpha1 > alpha2 lies outside the formula's domain
    assert_eq!(rows[2][3], "out_of_domain");
    assert_eq!(elastinet(&["sweep", "--alpha1-grid", "", "--alpha2-grid", "1"]).status.code(), Some(2));
    let ranged = elastinet(&["sweep", "--alpha1-grid", "1:2:5", "--alpha2-grid", "2"]);
    assert_eq!(String::from_utf8(ranged.stdout).unwrap().lines().count(), 6);
}

#[test]
fn generalized_reference_matches_double_bubble() {
    let out = elastinet(&["reference", "--shape", "generalized", "--n", "50"]);
    let summary: Value = serde_json::from_slice(&out.stderr).unwrap();
    let closed = (2.0 / 3.0) * (8.0 * std::f64::consts::PI * (8.0 * std::f64::consts::PI + 3.0 * 3f64.sqrt())).sqrt();
    let f = summary["energy"].as_f64().unwrap();
    assert!((f - closed).abs() / closed < 1e-3, "{f}");
    assert_eq!(summary["kind"], "theta");
}
