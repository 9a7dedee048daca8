use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rigidquad::enumerate::enumerate_h_trees;
use rigidquad::TreeClass;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigidquad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn series_r_table() {
    let o = run(&["series", "r", "--order", "6"]);
    assert!(o.status.success());
    let coeffs: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.split('\t').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(coeffs, ["0", "1", "-2", "-4", "-20", "-132", "-1008"]);
}

#[test]
fn series_json_is_parseable() {
    let o = run(&["series", "h", "--order", "4", "--base", "-1", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_object() || v.is_array());
}

#[test]
fn count_with_oracle_agrees() {
    let o = run(&["count", "--family", "h", "--n", "4", "--base", "1", "--oracle"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let nums: Vec<&str> = out
        .lines()
        .filter_map(|l| l.split_once(' '))
        .filter(|(k, _)| *k == "count" || *k == "oracle")
        .map(|(_, v)| v)
        .collect();
    assert_eq!(nums.len(), 2);
    assert_eq!(nums[0], nums[1]);
    assert!(out.lines().any(|l| l == "OK"));
}

#[test]
fn count_bcd_families() {
    for fam in ["b", "c", "delta"] {
        let o = run(&["count", "--family", fam, "--n", "2", "--base", "2", "--cobase", "1", "--oracle"]);
        assert!(o.status.success(), "{fam}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("OK"));
    }
}

#[test]
fn tree_quad_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for h in enumerate_h_trees(4, -2).unwrap().into_iter().take(5) {
        let tree = path(dir.path(), "tree.json");
        let quad = path(dir.path(), "quad.json");
        let back = path(dir.path(), "back.json");
        fs::write(&tree, h.to_json(TreeClass::H) + "\n").unwrap();
        assert!(run(&["convert", "tree-to-quad", "--in", &tree, "--out", &quad]).status.success());
        assert!(run(&["convert", "quad-to-tree", "--in", &quad, "--out", &back]).status.success());
        assert_eq!(fs::read(&tree).unwrap(), fs::read(&back).unwrap());
    }
}

#[test]
fn h_q_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for h in enumerate_h_trees(3, 2).unwrap() {
        let tree = path(dir.path(), "h.json");
        let q = path(dir.path(), "q.json");
        let back = path(dir.path(), "back.json");
        fs::write(&tree, h.to_json(TreeClass::H) + "\n").unwrap();
        assert!(run(&["convert", "h-to-q", "--in", &tree, "--out", &q]).status.success());
        assert!(run(&["convert", "q-to-h", "--in", &q, "--out", &back]).status.success());
        assert_eq!(fs::read(&tree).unwrap(), fs::read(&back).unwrap());
    }
}

#[test]
fn sampling_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "a.json");
    let b = path(dir.path(), "b.json");
    for out in [&a, &b] {
        let o = run(&["sample", "quad", "--base", "-2", "--n-max", "30", "--seed", "17", "--out", out]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let c = path(dir.path(), "c.json");
    let o = run(&["sample", "quad", "--base", "-2", "--n-max", "30", "--seed", "18", "--out", &c]);
    assert!(o.status.success());
}

#[test]
fn delta_sample_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let m = path(dir.path(), "m.json");
    let svg = path(dir.path(), "m.svg");
    let grid = path(dir.path(), "grid.json");
    let o = run(&["sample", "delta", "--base", "3", "--cobase", "2", "--n-max", "8", "--seed", "4", "--out", &m]);
    assert!(o.status.success());
    let o = run(&["render", "--in", &m, "--svg", &svg, "--json", &grid]);
    assert!(o.status.success());
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<?xml"));
    let g: serde_json::Value = serde_json::from_str(&fs::read_to_string(&grid).unwrap()).unwrap();
    assert!(g["faces"].as_array().is_some_and(|f| !f.is_empty()));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["series", "r"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "x.json");
    // base 2 has no maps below three corners
    let o = run(&["sample", "quad", "--base", "2", "--n-max", "2", "--out", &out]);
    assert_eq!(o.status.code(), Some(1));
    let bad = path(dir.path(), "bad.json");
    fs::write(&bad, "{}").unwrap();
    let o = run(&["convert", "quad-to-tree", "--in", &bad, "--out", &out]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["sample", "quad", "--base", "3", "--n-max", "40", "--n", "40", "--max-attempts", "1", "--out", &out]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_series_suite_passes() {
    let o = run(&["verify", "--suite", "series"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
