//! End-to-end checks of the binary: exit codes, report determinism, and
//! the data emitters.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_biratio"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn xie_exit_codes_and_statements() {
    let ok = run(&["xie", "--d", "16552", "--matrix-only"]);
    assert!(ok.status.success());
    let report = stdout_json(&ok);
    assert_eq!(report["verdicts"]["certified"], serde_json::json!(true));
    assert_eq!(report["results"]["statement"], serde_json::json!("lambda_lower_bound > 1"));

    let inconclusive = run(&["xie", "--d", "16551", "--matrix-only"]);
    assert!(inconclusive.status.success(), "inconclusive is a valid outcome, not an error");
    let report = stdout_json(&inconclusive);
    assert_eq!(report["verdicts"]["certified"], serde_json::json!(false));
}

#[test]
fn overlap_sets_exit_code_two() {
    let out = run(&["ind", "--map", "(y, y/x)", "--inverse", "(x/y, x)"]);
    assert_eq!(out.status.code(), Some(2));
    let report = stdout_json(&out);
    assert_eq!(report["results"]["disjointness"]["verdict"], serde_json::json!("overlap"));
}

#[test]
fn family_ind_is_disjoint() {
    let out = run(&["ind", "--family", "2,1,1/3,2/5"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["results"]["disjointness"]["verdict"], serde_json::json!("disjoint"));
    assert_eq!(report["results"]["count"], serde_json::json!(8));
}

#[test]
fn usage_errors_exit_one() {
    let out = run(&["xie"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let out = run(&["ind", "--map", "(x/0, y)"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("zero"), "stderr: {err}");

    let out = run(&["ind"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn map_can_come_from_a_file() {
    let dir = std::env::temp_dir().join("biratio-cli-test-map");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("twist.map");
    std::fs::write(&path, "((x^2+x+1)*y/(x^2+1), x)\n").unwrap();
    let out = run(&["degrees", "--map", path.to_str().unwrap(), "--iters", "3"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    let matrices = report["results"]["matrices"].as_array().unwrap();
    assert_eq!(matrices.len(), 3);
    assert_eq!(matrices[0], serde_json::json!([["2", "1"], ["1", "0"]]));
    assert_eq!(matrices[1], serde_json::json!([["5", "2"], ["2", "1"]]));
}

#[test]
fn reports_are_deterministic_modulo_timings() {
    let strip = |out: &Output| {
        let mut v = stdout_json(out);
        v.as_object_mut().unwrap().remove("timings");
        serde_json::to_string_pretty(&v).unwrap()
    };
    let a = run(&["dioph", "--alpha", "1.1,2.3", "--beta", "2", "--kmax", "12"]);
    let b = run(&["dioph", "--alpha", "1.1,2.3", "--beta", "2", "--kmax", "12"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(strip(&a), strip(&b));

    let a = run(&["verify", "--n", "2", "--d", "1", "--t1", "1/3", "--t2", "2/5", "--kmax", "8"]);
    let b = run(&["verify", "--n", "2", "--d", "1", "--t1", "1/3", "--t2", "2/5", "--kmax", "8"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn orbit_emits_csv() {
    let dir = std::env::temp_dir().join("biratio-cli-test-orbit");
    std::fs::create_dir_all(&dir).unwrap();
    let csv_path = dir.join("orbit.csv");
    let out = run(&[
        "orbit",
        "--family",
        "10,1,1/3,2/5",
        "--seed",
        "0.5,1.25",
        "--steps",
        "50",
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("step,phi1,phi2,lift1,lift2"));
    assert_eq!(lines.count(), 51);
}

#[test]
fn report_file_output() {
    let dir = std::env::temp_dir().join("biratio-cli-test-out");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["xie", "--d", "1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(body["command"], serde_json::json!("xie"));
    assert_eq!(body["results"]["path"], serde_json::json!("symbolic"));

    // unwritable output path is a runtime error
    let out = run(&["xie", "--d", "1", "--out", "/nonexistent-dir/report.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn probe_runs_small() {
    let dir = std::env::temp_dir().join("biratio-cli-test-probe");
    std::fs::create_dir_all(&dir).unwrap();
    let csv_path = dir.join("probe.csv");
    let out = run(&[
        "probe",
        "--family",
        "100,1,1/3,2/5",
        "--offset",
        "1e-3",
        "--seeds",
        "8",
        "--steps",
        "200",
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["verdicts"]["all_bounded"], serde_json::json!(true));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("step,abs_im_x,abs_im_y,dist_to_ind\n"));
    assert_eq!(csv.lines().count(), 202);
}

#[test]
fn fixed_points_subcommand() {
    let out = run(&["fixed-points", "--family", "2,1,1/3,2/5", "--grid", "16"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["verdicts"]["euler_characteristic_match"], serde_json::json!(true));
}

#[test]
fn degree_cap_env_is_honored() {
    let out = bin()
        .args(["degrees", "--map", "((x^2+x+1)*y/(x^2+1), x)", "--iters", "6"])
        .env("BIRATIO_MAX_DEGREE", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cap"), "stderr: {err}");
    assert!(Path::new(env!("CARGO_BIN_EXE_biratio")).exists());
}
