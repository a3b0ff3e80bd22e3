//! Exit codes and outputs of the command line tool.

use std::process::{Command, Output};

fn deltawave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deltawave")).args(args).output().unwrap()
}

#[test]
fn equal_states_have_no_waves() {
    let out = deltawave(&["riemann", "--eps", "0.1", "--left", "1,0.5", "--right", "1,0.5"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("pattern -"));
}

#[test]
fn riemann_json_is_parseable() {
    let out = deltawave(&["riemann", "--eps", "0.5", "--left", "1,1", "--right", "1.14286,0.7", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["middle"]["rho"].as_f64().unwrap() > 1.14286);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(deltawave(&["riemann", "--eps", "0.9", "--left", "1,1", "--right", "1,0"]).status.code(), Some(64));
    assert_eq!(deltawave(&["frobnicate"]).status.code(), Some(64));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, "{ \"eps_list\": [0.1,").unwrap();
    assert_eq!(deltawave(&["table", "--config", cfg.to_str().unwrap()]).status.code(), Some(64));
    std::fs::write(&cfg, r#"{"U0": {"rho": -1, "u": 0}}"#).unwrap();
    assert_eq!(deltawave(&["table", "--config", cfg.to_str().unwrap()]).status.code(), Some(64));
}

#[test]
fn vacuum_is_a_runtime_failure() {
    let out = deltawave(&["riemann", "--eps", "0.01", "--left", "1,-30", "--right", "1,30"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sdw_writes_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = deltawave(&["sdw", "--example", "ex3", "--until", "200", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("trend Increasing"), "{text}");
    let csv = std::fs::read_to_string(dir.path().join("sdw_path.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert!(rows.len() > 10);
    let last: Vec<f64> = rows.last().unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    assert!((last[0] - 200.0).abs() < 1e-9);
}

#[test]
fn track_writes_its_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = deltawave(&[
        "track", "--example", "ex1", "--eps", "0.1", "--delta-r", "0.05", "--t-end", "100", "--profile-times", "20",
        "--cstar-samples", "500", "--out", d,
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["fronts.csv", "glimm.csv", "profile.csv", "profile_20.csv"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["unclassified"], 0);
}
