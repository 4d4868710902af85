use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn vrsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vrsp")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decompose_fig4_by_rows_and_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cert");
    let f = fixture("fig4.json");
    let run = vrsp(&["decompose", path(&f), "--theorem", "6", "--rows", "R", "--cols", "C", "-o", path(&out)]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let cert: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("certificate.json")).unwrap()).unwrap();
    assert_eq!(cert["theorem"], "T6");
    assert_eq!((cert["left_vertices"].as_u64(), cert["right_vertices"].as_u64()), (Some(3), Some(4)));
    assert!(out.join("left.json").exists() && out.join("right.json").exists());

    // The written factors recompose to the input.
    let product = dir.path().join("z.json");
    let run = vrsp(&["product", "--op", "vrsp", path(&out.join("left.json")), path(&out.join("right.json")), "-o", path(&product)]);
    assert_eq!(run.status.code(), Some(0));
    let iso = vrsp(&["iso", path(&product), path(&f)]);
    assert_eq!(iso.status.code(), Some(0));
}

#[test]
fn failed_preconditions_exit_one() {
    let run = vrsp(&["decompose", path(&fixture("fig4.json")), "--theorem", "1", "--x", "C"]);
    assert_eq!(run.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.contains("result: preconditions failed"), "{stdout}");
}

#[test]
fn iso_negative_and_usage_errors() {
    let run = vrsp(&["iso", path(&fixture("fig1_left.json")), path(&fixture("fig1_right.json"))]);
    assert_eq!(run.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&run.stdout).contains("not isomorphic"));
    assert_eq!(vrsp(&["iso", "missing.json", "other.json"]).status.code(), Some(2));
    assert_eq!(vrsp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(vrsp(&["decompose", path(&fixture("fig1.json")), "--theorem", "4"]).status.code(), Some(2));
}

#[test]
fn deterministic_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("g{k}.json"));
        let run = vrsp(&["gen", "--kind", "mixed-t7", "--seed", "9", "-o", path(&out)]);
        assert_eq!(run.status.code(), Some(0));
        texts.push(fs::read(&out).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let auto = |_: usize| vrsp(&["decompose", path(&fixture("fig1.json")), "--theorem", "auto"]).stdout;
    assert_eq!(auto(0), auto(1));
}

#[test]
fn validate_contract_and_dot() {
    let f = fixture("fig2.json");
    let run = vrsp(&["validate", path(&f), "--as", "bipartite-matrix"]);
    assert_eq!(run.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&run.stdout).contains("result: holds"));
    let run = vrsp(&["validate", path(&fixture("fig1.json")), "--as", "cartesian-matrix"]);
    assert_eq!(run.status.code(), Some(1));

    let run = vrsp(&["contract", path(&fixture("fig4.json")), "--sets", "R"]);
    assert_eq!(run.status.code(), Some(0));
    let text = String::from_utf8(run.stdout).unwrap();
    assert_eq!(text.matches("\"id\"").count(), 3);

    let run = vrsp(&["export-dot", path(&fixture("fig1.json"))]);
    let dot = String::from_utf8(run.stdout).unwrap();
    assert!(dot.starts_with("digraph") && dot.matches("->").count() == 16);
}
