use std::process::Command;

use serde_json::Value;

fn qspectra(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qspectra")).args(args).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn spectrum_json() {
    let (out, _, code) = qspectra(&["spectrum", "--kind", "V1", "--nu", "2.5", "--q", "1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "V1");
    let levels: Vec<f64> = v["levels"].as_array().unwrap().iter().map(|l| l["E"].as_f64().unwrap()).collect();
    assert_eq!(levels, vec![-4.0, -1.0]);
    assert_eq!(v["method"], "closed_form");
}

#[test]
fn output_is_deterministic() {
    let args = ["spectrum", "--kind", "V7", "--A", "50", "--B", "-44"];
    assert_eq!(qspectra(&args).0, qspectra(&args).0);
}

#[test]
fn spectrum_csv_and_negative_values() {
    let (out, _, code) = qspectra(&["spectrum", "--kind", "V4", "--beta", "-1", "--lambda", "3.5", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,energy"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn verify_passes() {
    let (out, _, code) = qspectra(&["verify", "--kind", "V1", "--nu", "2.5", "--tol", "1e-4"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().filter(|l| l.ends_with("PASS")).count() >= 3);
}

#[test]
fn verify_fails_with_exit_one() {
    let (_, _, code) = qspectra(&["verify", "--kind", "V1", "--nu", "2.5", "--tol", "1e-12", "--grid-points", "500"]);
    assert_eq!(code, 1);
}

#[test]
fn unknown_kind_is_usage_error() {
    let (out, err, code) = qspectra(&["spectrum", "--kind", "V9", "--nu", "1"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["error"]["kind"], "invalid");
}

#[test]
fn parameter_for_wrong_kind_is_rejected() {
    let (_, err, code) = qspectra(&["spectrum", "--kind", "V1", "--nu", "2.5", "--alpha", "3"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn unknown_flag_is_usage_error() {
    let (_, err, code) = qspectra(&["spectrum", "--kind", "V1", "--bogus", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("\"error\""));
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("qspectra_cli_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("v1.json");
    std::fs::write(&cfg, r#"{"kind": "V1", "nu": 3.5, "format": "csv"}"#).unwrap();
    let (out, _, code) = qspectra(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "n,energy\n0,-9.0\n1,-4.0\n2,-1.0\n");
    let (out, _, _) = qspectra(&["spectrum", "--config", cfg.to_str().unwrap(), "--nu", "2.5"]);
    assert_eq!(out, "n,energy\n0,-4.0\n1,-1.0\n");
    let target = dir.join("out.csv");
    let (out, _, code) = qspectra(&["spectrum", "--config", cfg.to_str().unwrap(), "--out", target.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap(), "n,energy\n0,-9.0\n1,-4.0\n2,-1.0\n");
    std::fs::write(&cfg, r#"{"kind": "V1", "nu": 3.5, "colour": "red"}"#).unwrap();
    assert_eq!(qspectra(&["spectrum", "--config", cfg.to_str().unwrap()]).2, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn spec_round_trips_through_cli_output() {
    let (out, _, _) = qspectra(&["spectrum", "--kind", "V6", "--V0", "0", "--V1", "2", "--V2", "5", "--q", "1.5"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let mut spec = serde_json::Map::new();
    for key in ["kind", "q", "hbar", "mass", "V0", "V1", "V2"] {
        spec.insert(key.into(), v[key].clone());
    }
    let parsed: qspectra::PotentialSpec = serde_json::from_value(Value::Object(spec.clone())).unwrap();
    assert_eq!(serde_json::to_value(parsed).unwrap(), Value::Object(spec));
}

#[test]
fn wavefunction_csv() {
    let (out, _, code) =
        qspectra(&["wavefunction", "--kind", "V1", "--nu", "2.5", "--n", "1", "--points", "11", "--window", "-2:2", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows: Vec<(f64, f64)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let (x, p) = l.split_once(',').unwrap();
            (x.parse().unwrap(), p.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 11);
    // odd state
    assert!((rows[0].1 + rows[10].1).abs() < 1e-12);
    assert!(rows[5].1.abs() < 1e-12);
}

#[test]
fn level_out_of_range_is_contract_error() {
    let (_, err, code) = qspectra(&["wavefunction", "--kind", "V1", "--nu", "2.5", "--n", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("contract"));
}

#[test]
fn green_scan_finds_poles() {
    let (out, _, code) = qspectra(&["green-scan", "--kind", "V1", "--nu", "2.5", "--window", "-6:-0.01", "--resolution", "500"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let poles: Vec<f64> = v["poles"].as_array().unwrap().iter().map(|p| p.as_f64().unwrap()).collect();
    assert_eq!(poles.len(), 2);
    assert!((poles[0] + 4.0).abs() < 1e-9 && (poles[1] + 1.0).abs() < 1e-9);
    let (csv, _, _) = qspectra(&[
        "green-scan", "--kind", "V1", "--nu", "2.5", "--window", "-6:-0.01", "--resolution", "5", "--format", "csv",
    ]);
    assert!(csv.starts_with("E,re_invG,im_invG\n"));
    assert_eq!(csv.lines().count(), 6);
}
