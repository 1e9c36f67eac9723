//! End-to-end runs of the `harmconv` binary.

use serde_json::Value;
use std::f64::consts::FRAC_PI_4;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const SMALL_GRID: [&str; 4] = ["--grid-radii", "10", "--grid-angles", "64"];

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_harmconv"));
    cmd.env("HARMCONV_THREADS", "2");
    cmd
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn coeffs(v: &Value, key: &str) -> Vec<(f64, f64)> {
    v[key]
        .as_array()
        .unwrap()
        .iter()
        .map(|z| (z["re"].as_f64().unwrap(), z["im"].as_f64().unwrap()))
        .collect()
}

fn construct(spec: &Path, order: &str) -> Value {
    let out = run(&["construct", spec.to_str().unwrap(), "--order", order]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn construct_f0_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "f0.json", r#"{"type": "right_halfplane_f0"}"#);
    let v = construct(&spec, "8");
    let h = coeffs(&v, "h");
    let g = coeffs(&v, "g");
    for k in 1..=8 {
        assert_eq!(h[k], ((k as f64 + 1.0) / 2.0, 0.0));
        assert_eq!(g[k].0, (1.0 - k as f64) / 2.0);
    }
}

#[test]
fn construct_rejects_bad_parameter_with_field_name() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "bad.json",
        r#"{"type": "convolution",
            "left": {"type": "right_halfplane_f0"},
            "right": {"type": "slanted_halfplane_canonical", "a": {"re": 0.8, "im": 0.8}, "gamma": 0}}"#,
    );
    let out = run(&["construct", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("right.a"), "{err}");
}

#[test]
fn construct_rejects_unknown_fields_and_types() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"type": "right_halfplane_f0", "gama": 1}"#);
    let b = write(dir.path(), "b.json", r#"{"type": "disk"}"#);
    for p in [a, b] {
        assert_eq!(run(&["construct", p.to_str().unwrap()]).status.code(), Some(2));
    }
    assert_eq!(run(&["construct", "/nonexistent/spec.json"]).status.code(), Some(2));
}

#[test]
fn nested_convolution_is_termwise() {
    let dir = tempfile::tempdir().unwrap();
    let left = r#"{"type": "slanted_halfplane_canonical", "a": {"re": 0.3, "im": -0.2}, "gamma": 0.7}"#;
    let right = r#"{"type": "slanted_halfplane_canonical", "a": {"re": -0.1, "im": 0.4}, "gamma": 2.0}"#;
    let l = construct(&write(dir.path(), "l.json", left), "16");
    let r = construct(&write(dir.path(), "r.json", right), "16");
    let conv = construct(
        &write(
            dir.path(),
            "c.json",
            &format!(r#"{{"type": "convolution", "left": {left}, "right": {right}}}"#),
        ),
        "16",
    );
    for key in ["h", "g"] {
        let (x, y, z) = (coeffs(&l, key), coeffs(&r, key), coeffs(&conv, key));
        for k in 0..=16 {
            let re = x[k].0 * y[k].0 - x[k].1 * y[k].1;
            let im = x[k].0 * y[k].1 + x[k].1 * y[k].0;
            assert!((z[k].0 - re).abs() < 1e-15 && (z[k].1 - im).abs() < 1e-15);
        }
    }
}

#[test]
fn construct_output_round_trips_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "m.json",
        r#"{"type": "rotation", "theta": 1.234,
            "map": {"type": "halfplane_member", "a": {"re": 0, "im": 0}, "gamma": -0.4,
                    "dilatation": {"kind": "monomial", "theta": 0.3, "n": 2}}}"#,
    );
    let out = dir.path().join("out.json");
    let st = run(&["construct", spec.to_str().unwrap(), "--order", "64", "--out", out.to_str().unwrap()]);
    assert_eq!(st.status.code(), Some(0));
    let first: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let again = construct(&out, "64");
    for key in ["h", "g"] {
        let (a, b) = (coeffs(&first, key), coeffs(&again, key));
        assert!(a.iter().zip(&b).all(|(x, y)| x.0.to_bits() == y.0.to_bits()
            && x.1.to_bits() == y.1.to_bits()));
    }
}

fn check(spec: &Path, checks: &[&str]) -> (Option<i32>, Value) {
    let mut args = vec!["check", spec.to_str().unwrap()];
    for c in checks {
        args.push("--check");
        args.push(c);
    }
    args.extend(SMALL_GRID);
    let out = run(&args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code(), v)
}

#[test]
fn check_f0_passes() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "f0.json", r#"{"type": "right_halfplane_f0"}"#);
    let (code, v) = check(&spec, &["univalence", "convex_direction:0", "membership:halfplane:0,0,0"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["verdict"]["status"], "pass");
    assert_eq!(v["certificates"].as_array().unwrap().len(), 1);
}

#[test]
fn check_square_fails() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "z2.json",
        r#"{"type": "coefficients",
            "h": [{"re": 0, "im": 0}, {"re": 0, "im": 0}, {"re": 1, "im": 0}],
            "g": [{"re": 0, "im": 0}, {"re": 0, "im": 0}, {"re": 0, "im": 0}]}"#,
    );
    let (code, v) = check(&spec, &["convex_direction:0"]);
    assert_eq!(code, Some(1));
    assert_eq!(v["verdict"]["status"], "fail");
}

#[test]
fn check_rejects_malformed_request() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "f0.json", r#"{"type": "right_halfplane_f0"}"#);
    let (code, _) = check(&spec, &["membership:strip:0.1"]);
    assert_eq!(code, Some(2));
}

#[test]
fn reproduce_list_names_every_scenario() {
    let out = run(&["reproduce", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for id in ["th2.1", "th2.2", "th3.2", "th3.4", "th4.1", "th4.2", "th4.3-case1", "th4.3-case2"] {
        assert!(text.contains(id), "{id} missing");
    }
}

fn reproduce(extra: &[&str]) -> (Option<i32>, Value) {
    let mut args = vec!["reproduce"];
    args.extend(extra);
    args.extend(SMALL_GRID);
    let out = run(&args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code(), v)
}

#[test]
fn reproduce_cubic_case_one() {
    let (code, v) = reproduce(&["th4.3-case1"]);
    assert_eq!(code, Some(0));
    let z = &v["zero_counts"][0]["report"];
    assert_eq!(z["zeros_inside"], 2);
    assert_eq!(z["zeros_on_boundary"], 1);
}

#[test]
fn reproduce_monomial_case_and_single_combination() {
    let (code, _) = reproduce(&["th4.2", "--n", "1", "--a", "0,0"]);
    assert_eq!(code, Some(0));
    let (code, v) = reproduce(&["th3.4", "--n", "1", "--seed", "3"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["certificates"].as_array().unwrap().len(), 8);
}

#[test]
fn reproduce_failed_precondition_is_skipped() {
    // |a1 + 1| = 0.3 is below 2n/(n + 2) for n = 1
    let (code, v) = reproduce(&["th4.2", "--a", "-0.7,0"]);
    assert_eq!(code, Some(1));
    assert_eq!(v["verdict"]["status"], "skipped");
}

#[test]
fn reproduce_is_deterministic_in_seed() {
    let (_, a) = reproduce(&["th3.4", "--seed", "11"]);
    let (_, b) = reproduce(&["th3.4", "--seed", "11"]);
    assert_eq!(a["inputs"], b["inputs"]);
    assert_eq!(a["certificates"], b["certificates"]);
}

#[test]
fn reproduce_unknown_scenario_is_input_error() {
    assert_eq!(run(&["reproduce", "th9.9"]).status.code(), Some(2));
    assert_eq!(run(&["reproduce", "th2.1", "--a", "2,0"]).status.code(), Some(2));
}

fn render_csv(dir: &Path, spec: &str) -> Vec<Vec<f64>> {
    let spec = write(dir, "spec.json", spec);
    let svg = dir.join("img.svg");
    let out = run(&["render", spec.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml") && text.contains(r#"version="1.1""#));
    std::fs::read_to_string(dir.join("img.csv"))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn render_f0_stays_in_half_plane() {
    let dir = tempfile::tempdir().unwrap();
    let rows = render_csv(dir.path(), r#"{"type": "right_halfplane_f0"}"#);
    assert!(rows.iter().all(|r| r[2] > -0.5));
}

#[test]
fn render_strip_stays_between_walls() {
    let dir = tempfile::tempdir().unwrap();
    let rows = render_csv(
        dir.path(),
        r#"{"type": "strip_member", "b": {"re": 0, "im": 0}, "beta": 1.5707963267948966,
            "dilatation": {"kind": "monomial", "theta": 0, "n": 1}}"#,
    );
    assert!(rows.iter().all(|r| r[2].abs() < FRAC_PI_4));
}

#[test]
fn render_identity_keeps_circles() {
    let dir = tempfile::tempdir().unwrap();
    let rows = render_csv(dir.path(), r#"{"type": "identity"}"#);
    for r in rows {
        assert!((r[0].hypot(r[1]) - r[2].hypot(r[3])).abs() <= 1e-12);
    }
}
