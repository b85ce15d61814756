//! End-to-end behavior of the `cmk` binary: exit codes, output targets, and
//! subcommand payload shapes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn cmk() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cmk"))
}

fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    cmk().args(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn transform_reports_both_representations() {
    let out = run(&[
        "transform",
        "--scenario",
        scenario_path("correlated_bits.json").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["eta"], 1.25);
    assert_eq!(json["events"][1]["x"], 1.25);
    assert_eq!(json["events"][1]["ct"], 0.75);
}

#[test]
fn equivalence_reports_equal_pairs() {
    let out = run(&[
        "equivalence",
        "--scenario",
        scenario_path("correlated_bits.json").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    for entry in json["measures"].as_array().unwrap() {
        assert_eq!(entry["abs_diff"], 0.0, "{entry}");
        assert_eq!(entry["equal"], true);
    }
}

#[test]
fn every_shipped_report_entry_is_equal_within_tolerance() {
    for name in [
        "correlated_bits.json",
        "qubit_ensemble.json",
        "bsc_channel.json",
        "dephasing_kraus.json",
    ] {
        let out = run(&[
            "equivalence",
            "--scenario",
            scenario_path(name).to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{name}");
        let json = stdout_json(&out);
        for entry in json["measures"].as_array().unwrap() {
            if entry.get("skipped").is_some() {
                continue;
            }
            assert_eq!(entry["equal"], true, "{name}: {entry}");
            assert!(
                entry["abs_diff"].as_f64().unwrap() <= 1e-12,
                "{name}: {entry}"
            );
        }
    }
}

#[test]
fn equivalence_skips_declared_only_measures() {
    let out = run(&[
        "equivalence",
        "--scenario",
        scenario_path("qubit_ensemble.json").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    let entries = json["measures"].as_array().unwrap();
    let skipped = entries
        .iter()
        .find(|e| e["id"] == "quantum_capacity")
        .unwrap();
    assert!(skipped["skipped"]
        .as_str()
        .unwrap()
        .contains("declared-only"));
}

#[test]
fn beta_override_is_applied() {
    let out = run(&[
        "transform",
        "--scenario",
        scenario_path("correlated_bits.json").to_str().unwrap(),
        "--beta",
        "0",
    ]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["eta"], 1.0);
    assert_eq!(json["events"][1]["x"], 1.0);
}

#[test]
fn flags_on_qg_scenario_are_disconnected() {
    let out = run(&[
        "flags",
        "--scenario",
        scenario_path("correlated_bits.json").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    for flag in json["flags"].as_array().unwrap() {
        assert_eq!(flag["connected"], false);
        assert_eq!(flag["gradient"], serde_json::Value::Null);
    }
}

#[test]
fn flags_on_lightline_scenario_connect() {
    let out = run(&[
        "flags",
        "--scenario",
        scenario_path("lightline_flags.json").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    for flag in json["flags"].as_array().unwrap() {
        assert_eq!(flag["connected"], true);
        assert_eq!(flag["gradient"], 1.0);
        assert_eq!(flag["emitted"], true);
    }
}

#[test]
fn equivalence_accepts_measure_override() {
    let out = run(&[
        "equivalence",
        "--scenario",
        scenario_path("correlated_bits.json").to_str().unwrap(),
        "--measures",
        "entropy,coherent_information",
    ]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    let ids: Vec<&str> = json["measures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["entropy", "coherent_information"]);
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = run(&["transform", "--scenario", "/nonexistent.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(&["transform", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_scenario_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = std::fs::read_to_string(scenario_path("correlated_bits.json"))
        .unwrap()
        .replace("\"beta\": 0.6", "\"beta\": 1.0");
    std::fs::write(&path, text).unwrap();
    let out = run(&["transform", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("0 <= beta < 1"), "{stderr}");
}

#[test]
fn beta_flag_out_of_domain_is_a_validation_error() {
    let out = run(&[
        "transform",
        "--scenario",
        scenario_path("correlated_bits.json").to_str().unwrap(),
        "--beta",
        "1.0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn equivalence_on_s_scenario_is_a_validation_error() {
    let out = run(&[
        "equivalence",
        "--scenario",
        scenario_path("lightline_flags.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn measures_override_requiring_missing_data_is_a_validation_error() {
    let out = run(&[
        "measure",
        "--scenario",
        scenario_path("correlated_bits.json").to_str().unwrap(),
        "--measures",
        "holevo",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_conditioning_probability_is_a_numerical_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("degenerate.json");
    let text = std::fs::read_to_string(scenario_path("correlated_bits.json"))
        .unwrap()
        .replace("[[0.4, 0.1], [0.1, 0.4]]", "[[0.0, 0.0], [0.5, 0.5]]");
    std::fs::write(&path, text).unwrap();
    let out = run(&[
        "measure",
        "--scenario",
        path.to_str().unwrap(),
        "--measures",
        "entropy",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn fig3_rejects_out_of_domain_beta() {
    let out = run(&["fig3", "--betas", "0.5,1.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fig3_emits_csv_with_header() {
    let out = run(&["fig3", "--betas", "0.5", "--samples", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("dx_prime,dx_beta_0.5\n"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("diagram.svg");
    let out = run(&[
        "diagram",
        "--scenario",
        scenario_path("correlated_bits.json").to_str().unwrap(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn measure_lists_direct_values() {
    let out = run(&[
        "measure",
        "--scenario",
        scenario_path("bsc_channel.json").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    let entries = json["measures"].as_array().unwrap();
    let capacity = entries
        .iter()
        .find(|e| e["id"] == "classical_capacity")
        .unwrap();
    let bits = capacity["value"].as_f64().unwrap();
    assert!((bits - 0.5310044064107188).abs() <= 1e-6);
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for sub in [
        "transform",
        "measure",
        "equivalence",
        "flags",
        "fig3",
        "diagram",
    ] {
        assert!(text.contains(sub), "help lacks {sub}");
    }
}
