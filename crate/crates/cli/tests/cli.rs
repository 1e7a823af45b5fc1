use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn floerkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floerkit"))
        .args(args)
        .env("FLOERKIT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("floerkit-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_model(dir: &Path, file: &str, model: &[&str]) -> String {
    let mut args = vec!["make"];
    args.extend_from_slice(model);
    let out = floerkit(&args);
    assert!(out.status.success());
    let path = dir.join(file);
    std::fs::write(&path, out.stdout).unwrap();
    path.display().to_string()
}

#[test]
fn detect_figure_eight() {
    let dir = scratch("detect");
    let f8 = write_model(&dir, "f8.cfk", &["figure8"]);
    let out = floerkit(&["detect", &f8]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).trim(),
        "AlmostLSpace; hook profile {0:3, ±1:1}"
    );
}

#[test]
fn surgery_on_figure_eight() {
    let dir = scratch("surgery");
    let f8 = write_model(&dir, "f8.cfk", &["figure8"]);
    let out = floerkit(&["surgery", &f8, "--pq", "3/2"]);
    assert_eq!(stdout(&out).trim(), "7");
    let out = floerkit(&["surgery", &f8, "--pq", "-3/2"]);
    assert_eq!(stdout(&out).trim(), "7");
    let out = floerkit(&["surgery", &f8, "--pq", "4/2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn validate_reports_violations() {
    let dir = scratch("validate");
    let bad = dir.join("broken.cfk");
    std::fs::write(&bad, "gen a A=0 M=0\ngen b A=0 M=0\nd a = b\n").unwrap();
    let out = floerkit(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("Maslov"));
    let good = write_model(&dir, "t3.cfk", &["staircase", "1,1"]);
    let out = floerkit(&["validate", &good]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "valid");
}

#[test]
fn parse_errors_exit_one() {
    let dir = scratch("parse");
    let bad = dir.join("garbage.cfk");
    std::fs::write(&bad, "gen a A=zero M=0\n").unwrap();
    let out = floerkit(&["invariants", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(floerkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(floerkit(&["detect"]).status.code(), Some(2));
    assert_eq!(
        floerkit(&["make", "staircase", "1,1", "--bogus"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn make_models() {
    for model in [
        vec!["staircase", "1,1"],
        vec!["box", "1", "1"],
        vec!["almost1", "--n", "1"],
        vec!["almost2", "--n", "2"],
        vec!["figure8"],
        vec!["unknot"],
    ] {
        let mut args = vec!["make"];
        args.extend(model.iter());
        let out = floerkit(&args);
        assert_eq!(out.status.code(), Some(0), "{model:?}");
        assert!(stdout(&out).starts_with("gen "));
    }
    let out = floerkit(&["make", "staircase", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = floerkit(&["make", "almost1", "--n", "1", "--steps", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_round_trips() {
    let out = floerkit(&["--json", "make", "staircase", "1,1"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let c: floerkit::KnotComplex = serde_json::from_value(v).unwrap();
    assert_eq!(c, floerkit::complex::staircase(&[1, 1]).unwrap());

    let dir = scratch("json");
    let f8 = write_model(&dir, "f8.cfk", &["figure8"]);
    let out = floerkit(&["--json", "detect", &f8]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "AlmostLSpace");
    assert_eq!(v["witness"]["ranks"]["0"], 3);
}

#[test]
fn tensor_classify_and_equiv() {
    let dir = scratch("tensor");
    let t3 = write_model(&dir, "t3.cfk", &["staircase", "1,1"]);
    let out = floerkit(&["tensor", &t3, &t3]);
    let sq = dir.join("sq.cfk");
    std::fs::write(&sq, out.stdout).unwrap();
    let sq = sq.display().to_string();
    let out = floerkit(&["classify", &sq]);
    assert!(stdout(&out).starts_with("StaircasePlusBox"));

    let t5 = write_model(&dir, "t5.cfk", &["staircase", "1,1,1,1"]);
    let b = write_model(&dir, "box.cfk", &["box", "1", "-1"]);
    let out = floerkit(&["sum", &t5, &b]);
    let model = dir.join("model.cfk");
    std::fs::write(&model, out.stdout).unwrap();
    let out = floerkit(&["equiv", &sq, model.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "true");
    let out = floerkit(&["mirror", &t3]);
    let m = dir.join("m.cfk");
    std::fs::write(&m, out.stdout).unwrap();
    let out = floerkit(&["equiv", &t3, m.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "false");
}

#[test]
fn regions_and_triangles() {
    let dir = scratch("regions");
    let t3 = write_model(&dir, "t3.cfk", &["staircase", "1,1"]);
    let out = floerkit(&["region", &t3, "--region", "i=0"]);
    assert_eq!(stdout(&out).trim(), "F_{0}");
    let out = floerkit(&["region", &t3, "--region", "i<=0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = floerkit(&[
        "triangle",
        &t3,
        "--sub",
        "i<=-1,j=0",
        "--total",
        "i<=-1,j=0 | i=0,j<=-1",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).starts_with("exact"));
    let out = floerkit(&["triangle", &t3, "--double", "-1"]);
    assert_eq!(stdout(&out).lines().count(), 2);
    let out = floerkit(&["triangle", &t3]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stability_and_invariants() {
    let dir = scratch("stability");
    let t5 = write_model(&dir, "t5.cfk", &["staircase", "1,1,1,1"]);
    let out = floerkit(&["stability", &t5, "--pq", "3/1,7/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("2/1: rank 4 expected 4 ok"));
    let out = floerkit(&["stability", &t5, "--pq", "1/1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = floerkit(&["invariants", &t5, "--n", "3"]);
    let text = stdout(&out);
    assert!(text.contains("genus 2"));
    assert!(text.contains("tau 2"));
    assert!(text.contains("rank HF-hat of 3-surgery: 3"));
}

#[test]
fn enumerate_writes_replayable_files() {
    let dir = scratch("enumerate");
    let out_dir = dir.join("out");
    let out = floerkit(&[
        "enumerate",
        "--genus",
        "1",
        "--max-step",
        "1",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut files: Vec<_> = std::fs::read_dir(&out_dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert!(!files.is_empty());
    for f in &files {
        let text = std::fs::read_to_string(f).unwrap();
        let c = floerkit::complex::parse(&text).unwrap();
        assert_eq!(floerkit::complex::serialize(&c), text);
        let out = floerkit(&["detect", f.to_str().unwrap()]);
        assert!(stdout(&out).starts_with("AlmostLSpace"));
    }
}

#[test]
fn output_is_deterministic() {
    let a = floerkit(&["enumerate", "--genus", "1"]);
    let b = floerkit(&["enumerate", "--genus", "1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_theorem_genus_one() {
    let out = floerkit(&["verify-theorem", "--genus", "1"]);
    let text = stdout(&out);
    assert!(text.contains("classification violations: 0"), "{text}");
    assert!(text.contains("triangle failures: 0"));
}
