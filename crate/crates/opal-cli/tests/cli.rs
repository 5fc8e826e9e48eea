//! End-to-end CLI checks: exit-code contract, file round trips, and the
//! determinism of suite reports across processes.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_opal")
}

fn write_matrix_json(dir: &Path, name: &str, n: usize, entries: &[(f64, f64)]) -> PathBuf {
    let path = dir.join(name);
    let body = serde_json::json!({
        "n": n,
        "entries": entries,
    });
    std::fs::write(&path, serde_json::to_string(&body).unwrap()).unwrap();
    path
}

#[test]
fn power_subcommand_reports_consistent_methods() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_matrix_json(
        dir.path(),
        "x.json",
        2,
        &[(1.0, 0.0), (0.0, 1.0), (0.0, 1.0), (0.0, 0.0)],
    );
    let out = Command::new(bin())
        .args([
            "power",
            "--alpha",
            "0.5",
            "--in",
            input.to_str().unwrap(),
            "--method",
            "both",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["consistent"], serde_json::Value::Bool(true));
    assert!(v["cross_delta"].as_f64().unwrap() < 1e-8);
}

#[test]
fn convert_round_trip_is_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    // a matrix with awkward floats
    let entries: Vec<(f64, f64)> = (0..16)
        .map(|i| ((i as f64 / 7.0).sin() * 1e3, (i as f64 / 11.0).cos() / 3.0))
        .collect();
    let json_in = write_matrix_json(dir.path(), "m.json", 4, &entries);
    let csv = dir.path().join("m.csv");
    let json_back = dir.path().join("m2.json");
    for (a, b) in [(&json_in, &csv), (&csv, &json_back)] {
        let st = Command::new(bin())
            .args(["convert", "--in", a.to_str().unwrap(), "--out", b.to_str().unwrap()])
            .status()
            .unwrap();
        assert!(st.success());
    }
    let v1: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_in).unwrap()).unwrap();
    let v2: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_back).unwrap()).unwrap();
    assert_eq!(v1["entries"], v2["entries"]);
}

#[test]
fn malformed_input_exits_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let st = Command::new(bin())
        .args(["cones", "--in", bad.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(2));
    let st = Command::new(bin())
        .args(["suite", "run", "bogus-name"])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(2));
}

#[test]
fn failing_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // projections q <= u with an interpolant that violates the eps bound
    let q = write_matrix_json(
        dir.path(),
        "q.json",
        2,
        &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
    );
    let a = write_matrix_json(
        dir.path(),
        "a.json",
        2,
        &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.3, 0.0)],
    );
    let st = Command::new(bin())
        .args([
            "urysohn", "verify", "--a", a.to_str().unwrap(), "--q", q.to_str().unwrap(),
            "--u", q.to_str().unwrap(), "--eps", "0.1",
        ])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(1));
}

#[test]
fn suite_reports_are_deterministic_across_processes() {
    let dir = tempfile::tempdir().unwrap();
    let mut hashes = Vec::new();
    for name in ["r1.json", "r2.json"] {
        let path = dir.path().join(name);
        let st = Command::new(bin())
            .args([
                "suite", "run", "counterexample",
                "--seed", "12345",
                "--nmax", "24",
                "--json-out", path.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        // small truncations may fail threshold-gated checks; determinism is
        // what is asserted here, not all-pass
        assert!(st.code() == Some(0) || st.code() == Some(1));
        let v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        hashes.push(v["content_hash"].as_str().unwrap().to_string());
        assert_eq!(v["schema"], serde_json::json!(1));
    }
    assert_eq!(hashes[0], hashes[1]);
}

#[test]
fn nr_plot_emits_csv_header() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_matrix_json(
        dir.path(),
        "x.json",
        2,
        &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
    );
    let out = Command::new(bin())
        .args(["nr", "plot", "--in", input.to_str().unwrap(), "--angles", "16"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,support,re,im"));
    assert_eq!(lines.count(), 16);
}
