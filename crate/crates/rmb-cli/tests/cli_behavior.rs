//! Exit codes, message contracts, and file outputs of the binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn rmb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_fifteen_significant_digits() {
    let t1 = fixture("t1.json");
    let out = rmb(&[
        "eval",
        "--polygon",
        t1.to_str().unwrap(),
        "--p",
        "-0.5",
        "--x",
        "-0.7071067811865476,0.7071067811865476",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.trim(), "3.92837100659193e-2");
}

#[test]
fn out_of_range_p_exits_one_with_message() {
    let t1 = fixture("t1.json");
    let out = rmb(&[
        "eval",
        "--polygon",
        t1.to_str().unwrap(),
        "--p",
        "-1.5",
        "--x",
        "0,1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("p must lie in (-1,0)"), "stderr: {err}");
}

#[test]
fn degenerate_polygon_exits_one() {
    let bad = fixture("collinear.json");
    let out = rmb(&["certify", "--polygon", bad.to_str().unwrap(), "--p", "-0.5"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("positive area"), "stderr: {err}");
}

#[test]
fn certify_square_passes_with_recorded_perturbation() {
    let sq = fixture("square.json");
    let out = rmb(&["certify", "--polygon", sq.to_str().unwrap(), "--p", "-0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["verdict"], "pass");
    assert_eq!(json["perturbation_applied"], 1e-6);
    assert_eq!(json["config"]["perturb_seed"], 20240601);
}

#[test]
fn certify_rejects_positive_p_without_extended_flag() {
    let q1 = fixture("q1.json");
    let out = rmb(&["certify", "--polygon", q1.to_str().unwrap(), "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    let out = rmb(&[
        "certify",
        "--polygon",
        q1.to_str().unwrap(),
        "--p",
        "0.5",
        "--extended-range",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8(out.stderr).unwrap()
    );
}

#[test]
fn decompose_emits_field_per_field_json() {
    let q1 = fixture("q1.json");
    let out = rmb(&[
        "decompose",
        "--polygon",
        q1.to_str().unwrap(),
        "--x",
        "-0.7071067811865476,0.7071067811865476",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["flipped"], false);
    assert_eq!(json["z"].as_array().unwrap().len(), 3);
    assert_eq!(json["alpha"].as_array().unwrap().len(), 2);
    assert!((json["alpha"][0].as_f64().unwrap() - 6.0).abs() < 1e-9);
    assert!((json["alpha"][1].as_f64().unwrap() + 4.0).abs() < 1e-9);
    assert_eq!(json["cone_open_normals"], json["n"]);
}

#[test]
fn render_writes_two_path_svg_and_pinned_csv_header() {
    let t1 = fixture("t1.json");
    let dir = tempfile::tempdir().unwrap();
    let out = rmb(&[
        "render",
        "--polygon",
        t1.to_str().unwrap(),
        "--p",
        "-0.5",
        "--samples",
        "256",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("render.csv")).unwrap();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("# rmb render"));
    assert_eq!(lines.next().unwrap(), "angle,bx,by,norm_value");
    // 256 uniform samples plus one per cone boundary (6 for the triangle).
    assert_eq!(lines.count(), 256 + 6);
    let svg = std::fs::read_to_string(dir.path().join("render.svg")).unwrap();
    assert_eq!(svg.matches("<path").count(), 2);
    assert!(svg.contains("<text"));
}

#[test]
fn render_rejects_bad_sample_count() {
    let t1 = fixture("t1.json");
    let dir = tempfile::tempdir().unwrap();
    let out = rmb(&[
        "render",
        "--polygon",
        t1.to_str().unwrap(),
        "--p",
        "-0.5",
        "--samples",
        "0",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn boundary_csv_matches_render_points() {
    let q1 = fixture("q1.json");
    let out = rmb(&[
        "boundary",
        "--polygon",
        q1.to_str().unwrap(),
        "--p",
        "-0.5",
        "--samples",
        "16",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# rmb boundary"));
    assert_eq!(lines.next().unwrap(), "angle,x,y");
    assert_eq!(lines.count(), 16 + 12);
}

#[test]
fn oracle_compare_fixture_consistency() {
    let oct = fixture("oct8.json");
    let out = rmb(&[
        "oracle-compare",
        "--polygon",
        oct.to_str().unwrap(),
        "--p",
        "-0.5",
        "--directions",
        "8",
        "--mc-samples",
        "20000",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in text.lines().skip(2) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let (closed, exact, mc, stderr) = (cols[1], cols[2], cols[3], cols[4]);
        assert!((closed - exact).abs() <= 1e-10 * exact);
        assert!((mc - exact).abs() <= 4.0 * stderr, "{line}");
    }
}

#[test]
fn usage_error_exits_one_not_two() {
    let out = rmb(&["eval", "--polygon"]);
    assert_eq!(out.status.code(), Some(1));
    let out = rmb(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
    let out = rmb(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}
