use std::f64::consts::PI;
use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn smoothing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smoothing")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn csv_rows(out: &Output) -> Vec<(f64, f64)> {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,value"));
    lines
        .map(|l| {
            let (r, v) = l.split_once(',').unwrap();
            (r.parse().unwrap(), v.parse().unwrap())
        })
        .collect()
}

fn box_weight() -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "r,w").unwrap();
    for i in 0..=400 {
        let r = i as f64 * 0.005;
        writeln!(f, "{r},{}", if r < 1.5 { 1.0 } else { 0.0 }).unwrap();
    }
    f
}

#[test]
fn dirac_type_a_in_three_dimensions() {
    let out = smoothing(&["constant", "--eq", "dirac", "--weight", "typeA:s=2", "--d", "3", "--m", "0"]);
    assert!(out.status.success());
    let v = json(&out);
    let c = v["computed"].as_f64().unwrap();
    assert!((c - 4.0 * PI / 3.0).abs() < 1e-6, "{c}");
    assert_eq!(v["case"]["equation"], "dirac");
}

#[test]
fn bessel_k0_schrodinger_in_two_dimensions() {
    let out = smoothing(&["constant", "--eq", "schrodinger", "--weight", "besselK0", "--psi", "sqrt-r", "--d", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!((v["computed"].as_f64().unwrap() - 0.5 * PI).abs() < 1e-6);
    assert_eq!(v["attainment"], "boundary-limit");
}

#[test]
fn type_b_with_separate_parameter() {
    let out = smoothing(&["constant", "--eq", "dirac", "--weight", "typeB", "--s", "1.5", "--d", "4", "--m", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!(v["discrepancy"].as_f64().unwrap() < 1e-6);
    assert_eq!(v["case"]["pair"], "typeB:s=1.5");
}

#[test]
fn gaussian_profile_peak() {
    let out = smoothing(&[
        "profile", "--weight", "gaussian", "--d", "2", "--normalized", "--r-min", "0.85", "--r-max", "0.93", "--grid",
        "81",
    ]);
    assert!(out.status.success());
    let rows = csv_rows(&out);
    let (r, v) = rows.iter().cloned().fold((0.0, 0.0), |b, x| if x.1 > b.1 { x } else { b });
    assert!((v - 1.17516).abs() < 5e-5, "{v}");
    assert!((r - 0.888807).abs() < 2e-3, "{r}");
}

#[test]
fn type_a_profile_matches_closed_form() {
    let out = smoothing(&["profile", "--weight", "typeA:s=2", "--d", "3", "--grid", "30"]);
    let rows = csv_rows(&out);
    let scaled: Vec<f64> = rows.iter().map(|(_, v)| 2.0 * v / (2.0 * PI).powi(3)).collect();
    for ((r, _), s) in rows.iter().zip(&scaled) {
        let want = (1.0 + r * r).sqrt() * (1.0 - (-2.0 * r).exp()) / (2.0 * r);
        assert!((s - want).abs() < 1e-8 * want, "r={r}");
    }
    assert!(scaled.windows(2).all(|w| w[1] < w[0]));
    assert!((scaled[0] - 1.0).abs() < 2e-2);
}

#[test]
fn bessel_k0_profile_is_monotone() {
    let out = smoothing(&["profile", "--weight", "besselK0", "--d", "2", "--normalized", "--grid", "40"]);
    let rows = csv_rows(&out);
    assert!(rows.windows(2).all(|w| w[1].1 > w[0].1));
    assert!((rows.last().unwrap().1 - 1.0).abs() < 1e-3);
}

#[test]
fn output_is_byte_stable() {
    let args = ["profile", "--weight", "exp", "--d", "3", "--k", "1", "--eq", "dirac", "--m", "0.5", "--grid", "25"];
    assert_eq!(smoothing(&args).stdout, smoothing(&args).stdout);
    let args = ["constant", "--weight", "typeC:s=2", "--d", "3"];
    assert_eq!(smoothing(&args).stdout, smoothing(&args).stdout);
}

#[test]
fn json_profile_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let out =
        smoothing(&["profile", "--weight", "gaussian", "--d", "3", "--grid", "5", "--format", "json", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["r"].as_array().unwrap().len(), 5);
    assert_eq!(v["value"].as_array().unwrap().len(), 5);
}

#[test]
fn hypothesis_failure_exits_two() {
    let f = box_weight();
    let id = format!("custom:{}", f.path().display());
    let out = smoothing(&["constant", "--weight", &id, "--d", "3", "--k-max", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis"));
    assert!(json(&out)["computed"].as_f64().unwrap() > 0.0);
}

#[test]
fn strict_truncation_exits_three() {
    let f = box_weight();
    let id = format!("custom:{}", f.path().display());
    let out = smoothing(&["constant", "--weight", &id, "--d", "3", "--k-max", "2", "--strict"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("truncated"));
}

#[test]
fn verify_subset() {
    let out = smoothing(&["verify", "--only", "lemma-ik"]);
    assert!(out.status.success());
    let v = json(&out);
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    assert_eq!(arr[0]["passed"], true);
    assert_eq!(smoothing(&["verify", "--only", "nothing-matches"]).status.code(), Some(1));
}

#[test]
fn bad_input_exits_one() {
    assert_eq!(smoothing(&["constant", "--weight", "gaussian", "--d", "3", "--m", "1"]).status.code(), Some(1));
    assert_eq!(smoothing(&["constant", "--weight", "nope", "--d", "3"]).status.code(), Some(1));
    assert_eq!(smoothing(&["constant", "--weight", "typeB:s=2.5", "--d", "2"]).status.code(), Some(1));
}

#[test]
fn thread_cap_from_environment() {
    let run = |n: &str| {
        Command::new(env!("CARGO_BIN_EXE_smoothing"))
            .args(["verify", "--only", "spinor2d"])
            .env("SMOOTH_CONST_THREADS", n)
            .output()
            .unwrap()
    };
    assert!(run("2").status.success());
    assert_eq!(run("0").status.code(), Some(1));
}
