use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

const STAR5: &str = "multiplicity 1\nvertex v0: 1 2 3 4 5\nvertex v1: 1\nvertex v2: 2\nvertex v3: 3\nvertex v4: 4\nvertex v5: 5\n";
const LINE2: &str = "multiplicity 1\nvertex v0: 1\nvertex v1: 1 2\nvertex v2: 2\n";

fn brauer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn with_file(contents: &str) -> (tempfile::TempDir, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.tree");
    fs::write(&path, contents).unwrap();
    (dir, path.to_str().unwrap().to_string())
}

#[test]
fn reflect_star_json() {
    let (_dir, path) = with_file(STAR5);
    let out = brauer(&["reflect", "--in", &path, "--edge", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["rename"]["removed"], 1);
    assert_eq!(v["rename"]["added"], 6);
    assert_eq!(v["slide"]["a"], 2);
    assert_eq!(v["tree"]["rotations"]["v0"], serde_json::json!([2, 3, 4, 5]));
    assert_eq!(v["tree"]["rotations"]["v2"], serde_json::json!([2, 6]));
}

#[test]
fn reduce_star_ends_in_a_line() {
    let (_dir, path) = with_file(STAR5);
    let out = brauer(&["reduce", "--in", &path, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let steps = v["plan"]["steps"].as_array().unwrap();
    assert!(!steps.is_empty() && steps.len() <= 40);
    let last = steps.last().unwrap()["code"].as_str().unwrap();
    assert_eq!(last, v["plan"]["final"].as_str().unwrap());
    let line = "multiplicity 1;vertex v0: 1;vertex v1: 1 2;vertex v2: 2 3;vertex v3: 3 4;vertex v4: 4 5;vertex v5: 5";
    let code: Value = serde_json::from_str(&stdout(&brauer(&["validate", "--tree", line, "--format", "json"]))).unwrap();
    assert_eq!(last, code["tree"]["canonical_code"].as_str().unwrap());
}

#[test]
fn verify_line_passes() {
    let (_dir, path) = with_file(LINE2);
    let out = brauer(&["verify", "--in", &path, "--edge", "1", "--field", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("overall PASS"));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn verify_all_edges_json() {
    let out = brauer(&["verify", "--tree", STAR5, "--all-edges", "--field", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 5);
    assert!(v["reports"][0].get("timings").is_none());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["reflect", "--tree", STAR5],
        vec!["verify", "--tree", STAR5, "--edge", "1", "--field", "4"],
        vec!["frobnicate"],
        vec!["cartan"],
        vec!["cartan", "--tree", STAR5, "--in", "x.tree"],
    ] {
        let out = brauer(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = brauer(&["verify", "--tree", STAR5, "--edge", "1", "--field", "4"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--field"));
    assert_eq!(brauer(&["--help"]).status.code(), Some(0));
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        vec!["reflect", "--tree", STAR5, "--edge", "9"],
        vec!["validate", "--tree", "multiplicity 1;vertex v0: 1 2;vertex v1: 1"],
        vec!["validate", "--in", "/nonexistent/tree"],
        vec!["enumerate", "--edges", "0"],
    ] {
        let out = brauer(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    }
}

#[test]
fn reflected_output_validates() {
    let dir = tempfile::tempdir().unwrap();
    let mut current = STAR5.to_string();
    for edge in ["1", "3", "2", "6"] {
        let path = dir.path().join("next.tree");
        let out = brauer(&["reflect", "--tree", &current, "--edge", edge, "--check-quiver", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let check = brauer(&["validate", "--in", path.to_str().unwrap()]);
        assert_eq!(check.status.code(), Some(0));
        current = fs::read_to_string(&path).unwrap();
    }
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec!["reduce", "--tree", STAR5, "--format", "json"],
        vec!["verify", "--tree", STAR5, "--all-edges", "--format", "json"],
        vec!["quiver", "--tree", STAR5, "--dot"],
        vec!["enumerate", "--edges", "6", "--format", "json"],
        vec!["cartan", "--tree", LINE2],
    ];
    for args in runs {
        let a = brauer(&args);
        let b = Command::new(env!("CARGO_BIN_EXE_brauer")).args(&args).env("BRAUER_SEED", "17").output().unwrap();
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn enumerate_counts() {
    let counts: Vec<usize> = (1..=7).map(|n| stdout(&brauer(&["enumerate", "--edges", &n.to_string()])).lines().count()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 6, 14, 34]);
}
