use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gpatlas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpatlas")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_reports_region_and_sign() {
    let o = gpatlas(&["classify", "3", "3", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["region"], "e");
    assert_eq!(v["sign"], -1);
    assert_eq!(v["w"], 2);
}

#[test]
fn parity_violation_is_a_validation_error() {
    let o = gpatlas(&["classify", "6", "4", "2", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn table1_has_no_differences() {
    let o = gpatlas(&["table1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no differences"));
    let o = gpatlas(&["table1", "--k1", "9", "--k2", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["diffs"].as_array().unwrap().len(), 0);
}

#[test]
fn table1_at_k2_two_reports_empty_rows() {
    let o = gpatlas(&["table1", "--k1", "6", "--k2", "2", "--format", "json"]);
    let v = json(&o);
    let empty = v["rows"].as_array().unwrap().iter().filter(|r| r["representative"].is_null()).count();
    assert_eq!(empty, 5);
}

#[test]
fn pinned_euler_factor() {
    let o = gpatlas(&["euler", "--input", &fixture("pinned_euler.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["closed_form_agrees"], true);
    assert!(stdout(&o).contains("3075975"));
}

#[test]
fn strict_mode_rejects_untempered_data() {
    let o = gpatlas(&["euler", "--input", &fixture("pinned_euler.json"), "--strict"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_input_is_a_validation_error() {
    let o = gpatlas(&["euler", "--input", "/nonexistent/file.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_ordinary_data_is_an_arithmetic_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    // valuations (0, 3, 6, 9) are ordered but not the Borel-ordinary ones
    let text = std::fs::read_to_string(fixture("pinned_euler.json"))
        .unwrap()
        .replace(r#""beta": {"rational": "4"}"#, r#""beta": {"rational": "8"}"#)
        .replace(r#""gamma": {"rational": "128"}"#, r#""gamma": {"rational": "64"}"#);
    std::fs::write(&f, text).unwrap();
    let o = gpatlas(&["euler", "--input", path(&f)]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn qexp_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let delta = dir.path().join("delta.json");
    let t2 = dir.path().join("t2.json");
    let dep = dir.path().join("dep.json");
    assert_eq!(gpatlas(&["qexp", "delta", "--terms", "60", "--out", path(&delta)]).status.code(), Some(0));
    assert_eq!(gpatlas(&["qexp", "hecke", "--input", path(&delta), "--l", "2", "--out", path(&t2)]).status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&t2).unwrap()).unwrap();
    let c = v["coefficients"].as_array().unwrap();
    assert_eq!(c.len(), 31);
    // T_2 Delta = -24 Delta
    assert_eq!(c[1], "-24");
    assert_eq!(c[2], "576");
    assert_eq!(gpatlas(&["qexp", "deplete", "--input", path(&delta), "--p", "3", "--out", path(&dep)]).status.code(), Some(0));
    let o = gpatlas(&["qexp", "stabilize", "--input", path(&delta), "--p", "11", "--precision", "4"]);
    assert_eq!(o.status.code(), Some(0));
    // truncation too short for T_67
    let o = gpatlas(&["qexp", "hecke", "--input", path(&delta), "--l", "67"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn atlas_rejects_garbage() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.toml");
    std::fs::write(&f, "p = 4\nk1 = 6\nk2 = 4\nN = 1\nN1 = 1\nN2 = 1\n").unwrap();
    let o = gpatlas(&["atlas", "--input", path(&f)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn figure_svg_has_nine_regions() {
    let o = gpatlas(&["figure", "6", "4", "--format", "svg"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("<polygon").count(), 9);
}
