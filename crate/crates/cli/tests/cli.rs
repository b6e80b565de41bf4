//! End-to-end tests of the `prodsurf` binary: files written, report
//! contents, exit codes, and byte-stability of reruns.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_prodsurf");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json_file(path: &Path) -> Value {
    let text = fs::read_to_string(path).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn sphere_h2r_files_and_report() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path().join("out");
    let out = run(&[
        "sphere",
        "--space",
        "h2r",
        "--K",
        "1",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    for name in [
        "profile.csv",
        "sphere.obj",
        "sphere_disk.obj",
        "sphere_report.json",
    ] {
        assert!(dir.join(name).exists(), "{name} missing");
    }

    let report = json_file(&dir.join("sphere_report.json"));
    assert!(report["symmetry_residual"].as_f64().unwrap() < 1e-9);
    assert!((report["k_max"].as_f64().unwrap() - 1.0850385019483878).abs() < 1e-12);
    assert!((report["height"].as_f64().unwrap() - 2.3420223717363812).abs() < 1e-9);
    assert_eq!(report["space"], "h2r");
    assert_eq!(report["seed"].as_u64().unwrap(), 20260816);
    assert!(report["version"].is_string());

    let csv = fs::read_to_string(dir.join("profile.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("u,k,h"));
    // 2 * 64 profile segments -> 129 samples plus the header.
    assert_eq!(csv.lines().count(), 130);
    let first = csv.lines().nth(1).unwrap();
    assert!(first.starts_with("-1.0000000000000000e0,0.0000000000000000e0,"));

    let obj = fs::read_to_string(dir.join("sphere.obj")).unwrap();
    assert!(obj.starts_with("# command: prodsurf sphere --space h2r --K 1 --C 0 --n-u 64 --n-v 64"));
    assert!(obj.contains("# seed: 20260816"));
    assert!(obj.contains("# version: "));
    assert!(obj.contains("\nv "));
    assert!(obj.contains("\nf "));
}

#[test]
fn sphere_s2r_stays_in_the_hemisphere() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path().join("out");
    let out = run(&[
        "sphere",
        "--space",
        "s2r",
        "--K",
        "1",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let report = json_file(&dir.join("sphere_report.json"));
    assert!(report["k_max"].as_f64().unwrap() < std::f64::consts::FRAC_PI_2);
    // Disk coordinates exist only for the hyperbolic ambient.
    assert!(!dir.join("sphere_disk.obj").exists());
}

#[test]
fn sphere_usage_errors() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path().to_str().unwrap().to_owned();
    let out = run(&["sphere", "--K", "0", "--out-dir", &dir]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("positive"));

    let out = run(&["sphere", "--n-u", "4", "--out-dir", &dir]);
    assert_eq!(code(&out), 2);

    // Unknown flags are usage errors too.
    let out = run(&["sphere", "--weird-flag", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sphere_reruns_are_byte_identical() {
    let tmp = TempDir::new().unwrap();
    let d1 = tmp.path().join("a");
    let d2 = tmp.path().join("b");
    for d in [&d1, &d2] {
        let out = run(&[
            "sphere",
            "--K",
            "2.5",
            "--n-u",
            "16",
            "--n-v",
            "12",
            "--out-dir",
            d.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    }
    for name in [
        "profile.csv",
        "sphere.obj",
        "sphere_disk.obj",
        "sphere_report.json",
    ] {
        let a = fs::read(d1.join(name)).unwrap();
        let b = fs::read(d2.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
}

#[test]
fn helicoid_quadratic_reports() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path().join("out");
    let out = run(&[
        "helicoid",
        "--profile",
        "quadratic",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    for name in ["helicoid.obj", "simple_end.json", "curvature_match.json"] {
        assert!(dir.join(name).exists(), "{name} missing");
    }

    let cm = json_file(&dir.join("curvature_match.json"));
    assert!(cm["max_error"].as_f64().unwrap() < 1e-4);
    assert_eq!(cm["pass"], Value::Bool(true));

    let se = json_file(&dir.join("simple_end.json"));
    assert_eq!(se["profile"], "quadratic");
    assert_eq!(se["report"]["pass"], Value::Bool(true));
    assert_eq!(se["report"]["funnel_pass"], Value::Bool(true));
    assert_eq!(se["report"]["bounded_pass"], Value::Bool(true));
    assert_eq!(se["report"]["planes"].as_array().unwrap().len(), 4);
}

#[test]
fn helicoid_cosh_window_override() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path().join("out");
    let out = run(&[
        "helicoid",
        "--profile",
        "cosh",
        "--window",
        "6",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let se = json_file(&dir.join("simple_end.json"));
    assert_eq!(se["domain"][0].as_f64().unwrap(), -6.0);
    assert_eq!(se["domain"][1].as_f64().unwrap(), 6.0);
    assert_eq!(se["report"]["pass"], Value::Bool(true));
    let cm = json_file(&dir.join("curvature_match.json"));
    assert!(cm["max_error"].as_f64().unwrap() < 1e-4);
}

#[test]
fn helicoid_rejects_nonconvex_profile() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path().to_str().unwrap().to_owned();
    // rho(y) = 1 - y^2 has rho'' = -2 < 0 everywhere.
    let out = run(&["helicoid", "--coeffs", "1,0,-1", "--out-dir", &dir]);
    assert_eq!(code(&out), 4);
    let msg = stderr(&out);
    assert!(msg.contains("convex"), "stderr: {msg}");
    assert!(msg.contains("rho''("), "stderr lacks the offending y: {msg}");
}

#[test]
fn verify_passes_and_reruns_identically() {
    let tmp = TempDir::new().unwrap();
    let report_path = tmp.path().join("report.json");
    let args = [
        "verify",
        "--K",
        "1",
        "--space",
        "h2r",
        "--out",
        report_path.to_str().unwrap(),
    ];
    let first = run(&args);
    assert_eq!(code(&first), 0, "stderr: {}", stderr(&first));
    let second = run(&args);
    assert_eq!(code(&second), 0);
    assert_eq!(first.stdout, second.stdout, "verify stdout not stable");

    let report = json_file(&report_path);
    assert_eq!(report["all_pass"], Value::Bool(true));
    assert_eq!(report["criteria"].as_array().unwrap().len(), 12);
    assert_eq!(report["seed"].as_u64().unwrap(), 20260816);
    for c in report["criteria"].as_array().unwrap() {
        assert_eq!(c["pass"], Value::Bool(true), "criterion failed: {c}");
    }
}

#[test]
fn verify_rejects_nonpositive_curvature() {
    let out = run(&["verify", "--K", "-1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("positive"));
}

#[test]
fn ck_table_grid_rows_and_monotonicity() {
    let tmp = TempDir::new().unwrap();
    let path = tmp.path().join("ck.csv");
    let out = run(&[
        "ck-table",
        "--ks",
        "0.1,0.5,1,2,10",
        "--epsilon",
        "-1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[0], "K,epsilon,c_K");
    assert_eq!(lines[6], "# monotone_decreasing: true");
    // The K = 1 row carries the frozen constant.
    let fields: Vec<&str> = lines[3].split(',').collect();
    assert_eq!(fields[1], "-1");
    let c1: f64 = fields[2].parse().unwrap();
    assert!((c1 - 1.1983933613115832).abs() < 1e-15);
}

#[test]
fn ck_table_single_row_and_usage_errors() {
    let tmp = TempDir::new().unwrap();
    let path = tmp.path().join("one.csv");
    let out = run(&["ck-table", "--ks", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 3);

    // Empty grid, nonpositive entries and a bad epsilon are usage errors.
    let out = run(&["ck-table", "--ks", ""]);
    assert_eq!(code(&out), 2);
    let out = run(&["ck-table", "--ks", "1,-2"]);
    assert_eq!(code(&out), 2);
    let out = run(&["ck-table", "--ks", "1", "--epsilon", "3"]);
    assert_eq!(code(&out), 2);
    let out = run(&["ck-table"]);
    assert_eq!(code(&out), 2);
}
