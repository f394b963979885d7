//! End-to-end CLI contract: exit codes, artifacts, and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_pdgeom")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pdgeom-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_cli(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn pdgeom")
}

#[test]
fn verify_passes_on_so14_and_writes_artifacts() {
    let out = scratch("so14");
    let result = run_cli(&[
        "verify", "--family", "so", "--p", "1", "--q", "2", "--seed", "7",
        "--samples", "3000", "--restarts", "8", "--directions", "40",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&result.stderr));
    let stdout = String::from_utf8_lossy(&result.stdout);
    assert!(stdout.contains("overall: PASS"));
    for artifact in ["report.json", "algebra.json", "table1.csv"] {
        assert!(out.join(artifact).is_file(), "missing {artifact}");
    }
    assert!(out.join("profiles/dir000.csv").is_file());

    // C0 = 1 for so(1,4), recorded in the coercivity section
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    let coercivity = report["sections"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["name"] == "coercivity")
        .unwrap();
    let c0 = coercivity["notes"]["coercivity"]["c0"].as_f64().unwrap();
    assert!((c0 - 1.0).abs() < 1e-6, "C0 = {c0}");
}

#[test]
fn sp11_report_carries_the_fitted_table_row() {
    let out = scratch("sp11");
    let result = run_cli(&[
        "verify", "--family", "sp", "--m", "1", "--n", "1", "--quiet",
        "--samples", "3000", "--restarts", "8", "--directions", "40",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0));
    // quiet: no summary
    assert!(result.stdout.is_empty());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    let curvature = report["sections"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["name"] == "curvature")
        .unwrap();
    let fit = &curvature["notes"]["fit"];
    assert!((fit["fitted_min_k"].as_f64().unwrap() + 4.0).abs() < 1e-6);
    assert!((fit["fitted_ricci"].as_f64().unwrap() + 12.0).abs() < 0.12);
    let table = std::fs::read_to_string(out.join("table1.csv")).unwrap();
    assert!(table.contains("Sp(1,1)/Sp(1)xSp(1)"));
}

#[test]
fn q_below_two_is_a_config_error_for_verify() {
    let out = scratch("q1");
    let result = run_cli(&[
        "verify", "--family", "so", "--p", "1", "--q", "1",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("q >= 2"), "stderr: {stderr}");
}

#[test]
fn usage_and_config_errors_exit_2() {
    let out = scratch("badcfg");
    // unknown family
    let result = run_cli(&["verify", "--family", "su", "--p", "1", "--q", "2"]);
    assert_eq!(result.status.code(), Some(2));
    // missing parameters
    let result = run_cli(&["identities", "--family", "sp", "--m", "1"]);
    assert_eq!(result.status.code(), Some(2));
    // unreadable config file
    let result = run_cli(&["algebra", "--config", "/nonexistent/nowhere.json"]);
    assert_eq!(result.status.code(), Some(2));
    // malformed config file
    let bad = out.join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let result = run_cli(&["algebra", "--config", bad.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
    // clap usage error
    let result = run_cli(&["no-such-subcommand"]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn impossible_tolerances_exit_1() {
    let out = scratch("tol");
    let result = run_cli(&[
        "identities", "--family", "so", "--p", "1", "--q", "2",
        "--tol-scale", "1e-9", "--quiet",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(1));
    // the partial report is still written
    assert!(out.join("report.json").is_file());
}

#[test]
fn reports_are_byte_identical_for_identical_config_and_seed() {
    let out_a = scratch("det-a");
    let out_b = scratch("det-b");
    for out in [&out_a, &out_b] {
        let result = run_cli(&[
            "verify", "--family", "so", "--p", "2", "--q", "2", "--seed", "13",
            "--samples", "2000", "--restarts", "6", "--directions", "25", "--quiet",
            "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(result.status.code(), Some(0));
    }
    let a = std::fs::read(out_a.join("report.json")).unwrap();
    let b = std::fs::read(out_b.join("report.json")).unwrap();
    assert_eq!(a, b, "reports differ between identical runs");
}

#[test]
fn config_file_drives_the_run_and_flags_override() {
    let out = scratch("cfgfile");
    let cfg = out.join("run.json");
    std::fs::write(&cfg, r#"{"family":"so","p":2,"q":2,"xi":[1.0,2.0,3.0],"seed":3}"#).unwrap();
    let result = run_cli(&[
        "algebra", "--config", cfg.to_str().unwrap(), "--quiet",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("algebra.json")).unwrap()).unwrap();
    assert_eq!(doc["algebra"]["label"], "so(2,4)");
    assert_eq!(doc["algebra"]["xi"].as_array().unwrap().len(), 3);
    assert_eq!(doc["dim"], 15);
    assert_eq!(doc["n"], 8);
    // a flag overrides the file: p = 3 has dim so(3,4) = 21
    let result = run_cli(&[
        "algebra", "--config", cfg.to_str().unwrap(), "--p", "3", "--quiet",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("algebra.json")).unwrap()).unwrap();
    assert_eq!(doc["dim"], 21);
}

#[test]
fn custom_xi_changes_the_centralizer() {
    let out = scratch("xi");
    // so(2,4) with equal so(4)-coordinates: the centralizer grows beyond
    // the torus (r2 > 0) but stays proper, so the run still succeeds
    let result = run_cli(&[
        "algebra", "--family", "so", "--p", "2", "--q", "2",
        "--xi", "1,2,2", "--quiet",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&result.stderr));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("algebra.json")).unwrap()).unwrap();
    assert_eq!(doc["r1"], 2);
    assert!(doc["r2"].as_u64().unwrap() > 0);
    // degenerate xi (so(2) factor only): V = K, rejected as config error
    let result = run_cli(&[
        "algebra", "--family", "so", "--p", "2", "--q", "2",
        "--xi", "1,0,0", "--quiet",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn env_var_sets_the_default_output_directory() {
    let out = scratch("envdir");
    let result = Command::new(bin())
        .args(["identities", "--family", "so", "--p", "1", "--q", "2", "--quiet"])
        .env("PDGEOM_OUT_DIR", &out)
        .output()
        .expect("spawn pdgeom");
    assert_eq!(result.status.code(), Some(0));
    assert!(out.join("report.json").is_file());
}

#[test]
fn single_stage_reports_contain_only_their_section() {
    let out = scratch("single");
    let result = run_cli(&[
        "fibration", "--family", "sp", "--m", "1", "--n", "2", "--quiet",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    let sections = report["sections"].as_array().unwrap();
    assert_eq!(sections.len(), 1);
    assert_eq!(sections[0]["name"], "fibration");
    assert_eq!(report["schema"], 1);
}
