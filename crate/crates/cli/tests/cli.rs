use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn rectcross(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rectcross"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn complete_graph(n: usize) -> String {
    let mut s = format!("{n} {}\n", n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            s += &format!("{u} {v}\n");
        }
    }
    s
}

fn setup() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("k6.txt"), complete_graph(6)).unwrap();
    fs::write(dir.path().join("k12.txt"), complete_graph(12)).unwrap();
    fs::write(dir.path().join("tri.txt"), "3 3\n0 1\n1 2\n0 2\n").unwrap();
    dir
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn exact_k6() {
    let dir = setup();
    let v = json(&rectcross(&["exact", "k6.txt"], dir.path()));
    assert_eq!(v["crossing_count"], 3);
    assert_eq!(v["points"].as_array().unwrap().len(), 6);
}

#[test]
fn draw_writes_result_and_svg_then_render_matches() {
    let dir = setup();
    let out = rectcross(&["draw", "k12.txt", "-o", "r.json", "--svg", "r.svg"], dir.path());
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    for key in [
        "n",
        "K",
        "epsilon",
        "crossing_count",
        "small_value",
        "partition",
        "points",
        "edges",
        "diagnostics",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["edges"].as_array().unwrap().len(), 66);
    let rendered = rectcross(&["render", "r.json"], dir.path());
    assert!(rendered.status.success());
    assert_eq!(
        String::from_utf8(rendered.stdout).unwrap(),
        fs::read_to_string(dir.path().join("r.svg")).unwrap()
    );
}

#[test]
fn draw_is_deterministic() {
    let dir = setup();
    let a = rectcross(&["draw", "k12.txt", "--seed", "3"], dir.path());
    let b = rectcross(&["draw", "k12.txt", "--seed", "3"], dir.path());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn count_reports_pairs() {
    let dir = setup();
    fs::write(dir.path().join("k4.txt"), complete_graph(4)).unwrap();
    fs::write(dir.path().join("sq.txt"), "0 0\n1 0\n1 1\n0 1\n").unwrap();
    let v = json(&rectcross(&["count", "k4.txt", "sq.txt", "--pairs"], dir.path()));
    assert_eq!(v["crossing_count"], 1);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 1);
}

#[test]
fn partition_and_certificate() {
    let dir = setup();
    let out = rectcross(&["partition", "k12.txt", "--certificate", "c.json"], dir.path());
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 12);
    let c: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("c.json")).unwrap()).unwrap();
    for key in [
        "epsilon",
        "K",
        "best_deviation",
        "witness_S",
        "witness_T",
        "verified_exact",
    ] {
        assert!(c.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn cutdist_of_graph_with_itself_is_zero() {
    let dir = setup();
    let v = json(&rectcross(&["cutdist", "k6.txt", "k6.txt"], dir.path()));
    assert_eq!(v["value"], "0");
    assert_eq!(v["exact"], true);
}

#[test]
fn experiment_csv() {
    let dir = setup();
    let out = rectcross(&["experiment", "--family", "complete", "--sizes", "12,16"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "family,n,p,trial,upper_bound,normalizer,ratio,seconds");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].contains(",1.000000,"));
}

#[test]
fn catalog_build_and_info_round_trip() {
    let dir = setup();
    assert!(rectcross(&["catalog", "build", "-n", "5", "-o", "c5.bin"], dir.path())
        .status
        .success());
    let out = rectcross(&["catalog", "info", "c5.bin"], dir.path());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order types: 3"), "{text}");
    let v = json(&rectcross(&["exact", "tri.txt", "--catalog", "c5.bin"], dir.path()));
    assert_eq!(v["crossing_count"], 0);
}

#[test]
fn kplanar_and_estimate() {
    let dir = setup();
    let v = json(&rectcross(&["kplanar", "k6.txt", "-k", "2"], dir.path()));
    assert_eq!(v["crossing_count"], 0);
    let v = json(&rectcross(
        &["estimate", "k12.txt", "-t", "6", "--trials", "3"],
        dir.path(),
    ));
    assert_eq!(v["median"], "48");
}

#[test]
fn exit_codes() {
    let dir = setup();
    fs::write(dir.path().join("bad.txt"), "3 1\n0 9\n").unwrap();
    fs::write(dir.path().join("line.txt"), "0 0\n1 1\n2 2\n").unwrap();
    let code = |args: &[&str]| rectcross(args, dir.path()).status.code();
    assert_eq!(code(&["exact", "bad.txt"]), Some(2));
    assert_eq!(code(&["draw", "k6.txt", "--epsilon", "3/2"]), Some(2));
    assert_eq!(code(&["count", "tri.txt", "line.txt"]), Some(3));
    assert_eq!(code(&["kplanar", "k6.txt", "-k", "3", "--cap", "100"]), Some(4));
    assert_eq!(code(&["exact", "missing.txt"]), Some(2));
}
