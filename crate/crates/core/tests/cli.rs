//! The `cvlab` binary: exit codes, output formats and determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cvlab::report::{parse_json, CSV_HEADER};

fn cvlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples/configs")
        .join(name)
}

#[test]
fn list_prints_six_surfaces() {
    let o = cvlab(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert!(text.contains("flat-cylinder chi=0"));

    let o = cvlab(&["list", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
}

#[test]
fn flat_cylinder_csv() {
    let o = cvlab(&[
        "sweep",
        "--surface",
        "flat-cylinder",
        "--h-min",
        "1",
        "--h-max",
        "64",
        "--steps",
        "12",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let hs: Vec<f64> = lines
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(hs.len(), 12);
    assert!(hs.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(CSV_HEADER, "h,mu,lambda,c_trunc,quad_error,gb_residual");
}

#[test]
fn flat_cylinder_all_pass_in_strict_mode() {
    let o = cvlab(&[
        "sweep",
        "--surface",
        "flat-cylinder",
        "--h-min",
        "1",
        "--h-max",
        "64",
        "--steps",
        "12",
        "--strict",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn json_keys_and_round_trip() {
    let o = cvlab(&["sweep", "--surface", "paraboloid"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut want = vec![
        "surface", "chi", "h1", "L", "L_error", "c_total", "samples", "verdicts",
    ];
    let mut got = keys.clone();
    want.sort_unstable();
    got.sort_unstable();
    assert_eq!(got, want);

    let report = parse_json(&text).unwrap();
    let raw = v["samples"].as_array().unwrap();
    assert_eq!(raw.len(), report.samples.len());
    for (s, r) in report.samples.iter().zip(raw) {
        for (field, x) in [
            ("h", s.h),
            ("mu", s.mu),
            ("lambda", s.lambda),
            ("c_trunc", s.c_trunc),
            ("quad_error", s.quad_error),
        ] {
            let printed = r[field].to_string();
            assert_eq!(
                printed.parse::<f64>().unwrap().to_bits(),
                x.to_bits(),
                "{field}"
            );
        }
    }
    assert_eq!(cvlab::report::render_json(&report), text);
}

#[test]
fn cusp_strict_fails_with_code_two() {
    let o = cvlab(&["sweep", "--surface", "cusp-cap", "--strict"]);
    assert_eq!(o.status.code(), Some(2));
    let report = parse_json(&stdout(&o)).unwrap();
    assert_eq!(
        report.verdicts["lambda-monotone"].status,
        cvlab::sweep::Status::Fail
    );
}

#[test]
fn unknown_surface_is_an_input_error() {
    let o = cvlab(&["verify", "--surface", "klein-bottle"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown surface"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(
        cvlab(&["sweep", "--surface", "paraboloid", "--steps", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        cvlab(&[
            "sweep",
            "--surface",
            "paraboloid",
            "--h-min",
            "5",
            "--h-max",
            "1"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        cvlab(&["sweep", "--surface", "paraboloid", "--rel-tol", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(cvlab(&["sweep"]).status.code(), Some(1));
}

#[test]
fn divergent_end_reports_no_convergence() {
    let path = config("gaussian_end.toml");
    let o = cvlab(&["sweep", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = parse_json(&stdout(&o)).unwrap();
    assert_eq!(report.c_total.to_string(), "does not converge (-inf)");
}

#[test]
fn bad_config_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.toml");
    std::fs::write(
        &path,
        "name = \"x\"\ngenus = 0\nends = 1\ncore = \"polar-cap\"\n[[end]]\ng = \"t^\"\nt_min = 0\n",
    )
    .unwrap();
    let o = cvlab(&["sweep", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["sweep", "--surface", "capped-cone", "--format", "csv"];
    let default = cvlab(&args);
    let single = Command::new(env!("CARGO_BIN_EXE_cvlab"))
        .args(args)
        .env("CVLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(default.status.code(), Some(0));
    assert_eq!(default.stdout, single.stdout);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = cvlab(&[
        "sweep",
        "--surface",
        "polar-plane",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(parse_json(&std::fs::read_to_string(&path).unwrap()).is_ok());
}

#[test]
fn verify_tables() {
    let o = cvlab(&["verify", "--surface", "polar-plane"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("L-nonneg")).unwrap();
    assert!(
        line.contains("pass") && line.contains("L = 6.28319"),
        "{line}"
    );

    let o = cvlab(&["verify", "--surface", "paraboloid", "--strict"]);
    assert_eq!(o.status.code(), Some(0));
    let margin = parse_json(&stdout(&cvlab(&["sweep", "--surface", "paraboloid"])))
        .unwrap()
        .verdicts["theorem"]
        .residual
        .unwrap();
    assert!(margin.abs() < 1e-3);
    assert!(stdout(&o)
        .lines()
        .any(|l| l.starts_with("theorem") && l.contains("pass")));
}
