use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anomalyid")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["version"].as_str().unwrap().starts_with("anomalyid/"));
    v
}

#[test]
fn formula_values() {
    for (k, d, exact) in [("1", "2", "3/4"), ("2", "2", "5/8"), ("4", "2", "63/128"), ("2", "3", "65/81")] {
        let v = json(&["formula", "--k", k, "--d", d]);
        assert_eq!(v["results"]["probability"], exact);
    }
    let v = json(&["formula", "--k", "3", "--d", "2"]);
    assert_eq!(v["results"]["probability_decimal"], "0.546875000000000");
    let fs: Vec<&str> = v["results"]["f_table"].as_array().unwrap().iter().map(|r| r["f"].as_str().unwrap()).collect();
    assert_eq!(fs, ["1", "1", "2", "5"]);
}

#[test]
fn missing_and_invalid_flags_are_usage_errors() {
    assert_eq!(run(&["formula", "--k", "2"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--n", "4", "--k", "0", "--d", "2"]).status.code(), Some(2));
    assert_eq!(run(&["formula", "--k", "2", "--d", "1"]).status.code(), Some(2));
    let out = run(&["simulate", "--n", "2", "--k", "3", "--d", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("k <= n"));
}

#[test]
fn simulate_is_seeded_and_modes_share_the_analytic_value() {
    let base = ["simulate", "--n", "4", "--k", "2", "--d", "2", "--trials", "100000", "--seed", "7"];
    let a = json(&base);
    assert!(a["results"]["z_score"].as_f64().unwrap().abs() <= 4.0);
    assert_eq!(run(&base).stdout, run(&base).stdout);
    let mut bern = base.to_vec();
    bern.extend(["--mode", "bernoulli"]);
    let b = json(&bern);
    assert_eq!(a["results"]["analytic"], b["results"]["analytic"]);
    assert_eq!(b["params"]["mode"], "bernoulli");
    assert_eq!(a["params"]["mode"], "rao-blackwell");
}

#[test]
fn certify_single_anomaly_beyond_dense_cap() {
    let v = json(&["certify", "--n", "5", "--k", "1", "--d", "3"]);
    assert_eq!(v["results"]["formula"], "8/9");
    assert!((v["results"]["born"].as_f64().unwrap() - 8.0 / 9.0).abs() <= 1e-10);
    assert_eq!(v["results"]["representation"], "factorized");
}

#[test]
fn dual_outside_supported_instance() {
    let out = run(&["certify", "--n", "3", "--k", "2", "--d", "2", "--dual"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported instance"));
}

#[test]
fn brauer_commands() {
    let dir = tempfile::tempdir().unwrap();
    let e = r#"{"n_left":1,"n_right":1,"pairs":[[["top",1],["top",2]],[["bottom",1],["bottom",2]]]}"#;
    let path = dir.path().join("e.json");
    fs::write(&path, e).unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["brauer", "compose", "--a", p, "--b", p]);
    assert_eq!(v["results"]["loops"], 1);

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"n_left":1,"n_right":1,"pairs":[[["top",1],["top",2]],[["bottom",1],["bottom",1]]]}"#).unwrap();
    let out = run(&["brauer", "compose", "--a", bad.to_str().unwrap(), "--b", p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pair 2"));

    let v = json(&["brauer", "bratteli", "--n", "3", "--m", "3", "--d", "2"]);
    assert_eq!(v["results"]["dimension_sum"], "64");
    let v = json(&["brauer", "relations", "--n", "2", "--m", "2", "--d", "2"]);
    assert!(v["results"]["max_residual"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn export_sdp_and_failure_leaves_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.dat-s");
    let v = json(&["export-sdp", "--n", "1", "--k", "1", "--d", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(v["results"]["expected_optimum"], "3/4");
    assert!(out.exists());

    let missing = dir.path().join("no/such/dir/p.dat-s");
    let res = run(&["export-sdp", "--n", "1", "--k", "1", "--d", "2", "--out", missing.to_str().unwrap()]);
    assert_ne!(res.status.code(), Some(0));
    assert!(!missing.exists());
    assert!(!dir.path().join("no").exists());
}

#[test]
fn csv_format() {
    let out = run(&["--format", "csv", "formula", "--k", "2", "--d", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 1);
    let col = headers.iter().position(|h| h == "result.probability").unwrap();
    assert_eq!(&rows[0][col], "5/8");
    let col = headers.iter().position(|h| h == "result.probability_decimal").unwrap();
    assert_eq!(&rows[0][col], "0.625000000000000");
}
