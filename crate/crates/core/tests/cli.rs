//! End-to-end tests of the `stframe` binary: exit-code contract, report
//! files, and byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stframe"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    let mut all = vec!["--out", dir.to_str().unwrap()];
    all.extend_from_slice(args);
    bin().args(&all).output().expect("binary runs")
}

fn tmpdir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("stframe-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn validate_exit_codes_and_report() {
    let dir = tmpdir("validate");
    let out = run_in(
        &dir,
        &["validate", "--partition", "dyadic1d", "--jmax", "6"],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("partition_report.json")).unwrap())
            .unwrap();
    assert_eq!(report["max_overlap"], 1);
    assert_eq!(report["c_inf"], 0.5);
    assert_eq!(report["holes"].as_array().unwrap().len(), 0);

    let out = run_in(&dir, &["validate", "--partition", "polar2d", "--jmax", "3"]);
    assert!(out.status.success());

    // clap rejects the negative scale index
    let out = run_in(
        &dir,
        &["validate", "--partition", "dyadic1d", "--jmax", "-1"],
    );
    assert_eq!(out.status.code(), Some(2));

    let out = run_in(
        &dir,
        &["validate", "--partition", "hexagonal", "--jmax", "2"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_exit_codes() {
    let dir = tmpdir("check");
    let pass = run_in(
        &dir,
        &[
            "check",
            "--window",
            "gaussian",
            "--s",
            "2",
            "--mode",
            "sufficient",
        ],
    );
    assert_eq!(
        pass.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&pass.stderr)
    );

    let fail = run_in(
        &dir,
        &[
            "check",
            "--window",
            "boxcar",
            "--s",
            "0",
            "--mode",
            "sufficient",
        ],
    );
    assert_eq!(fail.status.code(), Some(1));

    let semi = run_in(
        &dir,
        &[
            "check", "--window", "boxcar", "--s", "0.5", "--mode", "seminorm", "--jmax", "4",
        ],
    );
    assert_eq!(
        semi.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&semi.stderr)
    );

    let semi_fail = run_in(
        &dir,
        &[
            "check", "--window", "boxcar", "--s", "1.5", "--mode", "seminorm", "--jmax", "4",
        ],
    );
    assert_eq!(semi_fail.status.code(), Some(1));

    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.join("admissibility_report.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["mode"], "seminorm");

    let unknown = run_in(
        &dir,
        &["check", "--window", "welch", "--s", "1", "--mode", "norm"],
    );
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn analyze_self_coefficient_and_determinism() {
    let dir = tmpdir("analyze");
    let args = [
        "analyze",
        "--signal",
        "frame-element:j=2,k=+,m=3",
        "--lambda-max",
        "8",
    ];
    let out = run_in(&dir, &args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv1 = std::fs::read_to_string(dir.join("coefficients.csv")).unwrap();
    let mut unit_rows = 0;
    for line in csv1.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let (re, im): (f64, f64) = (cols[4].parse().unwrap(), cols[5].parse().unwrap());
        let mag = (re * re + im * im).sqrt();
        if cols[0] == "band" && cols[1] == "2" && cols[2] == "+" && cols[3].starts_with("3.") {
            assert!((mag - 1.0).abs() < 1e-8, "diagonal row: {line}");
            unit_rows += 1;
        } else {
            assert!(mag < 1e-8, "row should vanish: {line}");
        }
    }
    assert_eq!(unit_rows, 1);

    // byte-identical rerun
    let out2 = run_in(&dir, &args);
    assert!(out2.status.success());
    let csv2 = std::fs::read_to_string(dir.join("coefficients.csv")).unwrap();
    assert_eq!(csv1, csv2);
    assert_eq!(out.stdout, out2.stdout);

    // zero signal: all-zero table
    let out = run_in(&dir, &["analyze", "--signal", "zero", "--lambda-max", "2"]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.join("coefficients.csv")).unwrap();
    for line in csv.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[4].parse::<f64>().unwrap(), 0.0);
        assert_eq!(cols[5].parse::<f64>().unwrap(), 0.0);
    }

    // a signal modulated past the grid ceiling violates the tail budget
    let out = run_in(
        &dir,
        &[
            "analyze",
            "--signal",
            "gaussian:a=1,t0=0,w0=100",
            "--lambda-max",
            "2",
        ],
    );
    assert_eq!(
        out.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn frame_bounds_narrowband_unity_and_scan() {
    let dir = tmpdir("bounds");
    // orthonormal sinc system: every narrow-band ratio is 1
    let out = run_in(
        &dir,
        &[
            "frame-bounds",
            "--family",
            "narrowband",
            "--lambda-max",
            "64",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.join("bounds.csv")).unwrap();
    for line in csv.lines().skip(1) {
        let ratio: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((ratio - 1.0).abs() < 1e-6, "{line}");
    }

    // sublattice scan: A_hat nondecreasing as nu halves
    let out = run_in(
        &dir,
        &[
            "frame-bounds",
            "--window",
            "gaussian",
            "--jmax",
            "2",
            "--nu",
            "1",
            "--lambda-max",
            "8",
            "--grid-points",
            "16384",
            "--scan-nu",
            "1,0.5,0.25",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let scan = std::fs::read_to_string(dir.join("scan.csv")).unwrap();
    let a: Vec<f64> = scan
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(a.len(), 3);
    assert!(a[0] <= a[1] && a[1] <= a[2], "{a:?}");
}

#[test]
fn orthonormality_defaults_and_empty_selection() {
    let dir = tmpdir("gram");
    let out = run_in(&dir, &["orthonormality"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("gram_report.json")).unwrap())
            .unwrap();
    assert!(report["max_deviation"].as_f64().unwrap() < 1e-6);
    assert_eq!(report["n_indices"], 187);

    // informational run with a non-orthogonal window still exits 0
    let out = run_in(
        &dir,
        &[
            "orthonormality",
            "--window",
            "gaussian",
            "--jmax",
            "2",
            "--nu",
            "0.5",
            "--lambda-max",
            "3",
        ],
    );
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("gram_report.json")).unwrap())
            .unwrap();
    assert!(report["max_deviation"].as_f64().unwrap() > 1e-3);

    let out = run_in(&dir, &["orthonormality", "--j-min", "9", "--no-central"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spec_file_roundtrip_through_cli() {
    let dir = tmpdir("specfile");
    let spec_json = serde_json::json!({
        "dimension": 1,
        "partition": {"kind": "dyadic1d", "j_max": 2},
        "window": {"kind": "gaussian"},
        "nu": 0.5,
        "s": 1.0,
        "normalization": "exact",
        "seminorm_mode": false,
        "lambda_max": 4.0,
        "grid": {"omega_max": 16.0, "points": 16384}
    });
    let path = dir.join("spec.json");
    std::fs::write(&path, serde_json::to_string_pretty(&spec_json).unwrap()).unwrap();
    let out = run_in(
        &dir,
        &[
            "analyze",
            "--spec",
            path.to_str().unwrap(),
            "--signal",
            "gaussian:a=1,t0=0,w0=1",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.join("coefficients.csv")).unwrap();
    assert!(csv.lines().count() > 10);
}
