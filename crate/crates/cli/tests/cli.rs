//! End-to-end tests of the binary: exit codes, JSON documents, round trips.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn latval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latval"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("latval-test-{}-{name}", std::process::id()));
    fs::write(&path, contents).expect("temp file written");
    path
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const T2: &str = r#"{"dim": 2, "vertices": [["0","0"],["1","0"],["0","1"]]}"#;
const SQUARE: &str = r#"{"dim": 2, "vertices": [["0","0"],["1","0"],["0","1"],["1","1"]]}"#;

#[test]
fn compute_dst_on_simplex() {
    let input = write_temp("t2a.json", T2);
    let out = latval(&["compute", "--input", input.to_str().unwrap(), "--invariant", "dst"]);
    let v = stdout_json(&out);
    assert_eq!(v, serde_json::json!({"dst": ["1/3", "1/3"]}));
}

#[test]
fn compute_ehrhart_on_square() {
    let input = write_temp("sq.json", SQUARE);
    let out = latval(&["compute", "--input", input.to_str().unwrap(), "--invariant", "ehrhart"]);
    let v = stdout_json(&out);
    assert_eq!(v, serde_json::json!({"L": ["1", "2", "1"]}));
}

#[test]
fn compute_projection_body_round_trips() {
    let input = write_temp("t2b.json", T2);
    let out = latval(&[
        "compute",
        "--input",
        input.to_str().unwrap(),
        "--invariant",
        "projection-body",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
    // emitted polytopes re-parse: feed the output back as an input file
    let echo = write_temp("hex.json", &v.to_string());
    let again = latval(&[
        "compute",
        "--input",
        echo.to_str().unwrap(),
        "--invariant",
        "centroid",
    ]);
    let c = stdout_json(&again);
    assert_eq!(c, serde_json::json!({"centroid": ["0", "0"]}));
}

#[test]
fn compute_z_ab_requires_parameters() {
    let input = write_temp("t2c.json", T2);
    let out = latval(&["compute", "--input", input.to_str().unwrap(), "--invariant", "z-ab"]);
    assert_eq!(out.status.code(), Some(4));

    let out = latval(&[
        "compute",
        "--input",
        input.to_str().unwrap(),
        "--invariant",
        "z-ab",
        "--a",
        "1",
        "--b",
        "7",
    ]);
    let v = stdout_json(&out);
    // congruent parameters map lattice input to a lattice polygon
    for vert in v["vertices"].as_array().unwrap() {
        for coord in vert.as_array().unwrap() {
            assert!(!coord.as_str().unwrap().contains('/'));
        }
    }
}

#[test]
fn compute_with_operator_document() {
    let input = write_temp("t2e.json", T2);
    // inline operator document
    let out = latval(&[
        "compute",
        "--input",
        input.to_str().unwrap(),
        "--operator",
        r#"{"kind":"z_ab","a":"1","b":"1"}"#,
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);

    // the same document from a file
    let op = write_temp("op.json", r#"{"kind":"projection_scaled","c":"2"}"#);
    let arg = format!("@{}", op.display());
    let out = latval(&[
        "compute",
        "--input",
        input.to_str().unwrap(),
        "--operator",
        &arg,
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);

    // exactly one of --invariant / --operator
    let out = latval(&["compute", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let out = latval(&[
        "compute",
        "--input",
        input.to_str().unwrap(),
        "--operator",
        r#"{"kind":"nope"}"#,
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn exit_codes_for_bad_inputs() {
    let out = latval(&["compute", "--input", "/nonexistent.json", "--invariant", "count"]);
    assert_eq!(out.status.code(), Some(2));

    let garbage = write_temp("bad.json", "{not json");
    let out = latval(&["compute", "--input", garbage.to_str().unwrap(), "--invariant", "count"]);
    assert_eq!(out.status.code(), Some(2));

    let empty = write_temp("empty.json", r#"{"dim": 2, "vertices": []}"#);
    let out = latval(&["compute", "--input", empty.to_str().unwrap(), "--invariant", "count"]);
    assert_eq!(out.status.code(), Some(3));

    let input = write_temp("t2d.json", T2);
    let out = latval(&["compute", "--input", input.to_str().unwrap(), "--invariant", "bogus"]);
    assert_eq!(out.status.code(), Some(4));

    // planar-only invariant on a 3-dimensional input
    let cube3 = write_temp(
        "cube3.json",
        r#"{"dim": 3, "vertices": [["0","0","0"],["1","0","0"],["0","1","0"],["0","0","1"],
            ["1","1","0"],["1","0","1"],["0","1","1"],["1","1","1"]]}"#,
    );
    let out = latval(&[
        "compute",
        "--input",
        cube3.to_str().unwrap(),
        "--invariant",
        "contra-z-ab-2d",
        "--a",
        "1",
        "--b",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_suite_passes_and_writes_report() {
    let mut report = std::env::temp_dir();
    report.push(format!("latval-test-{}-report.json", std::process::id()));
    let out = latval(&[
        "verify",
        "--suite",
        "dst",
        "--dim",
        "2",
        "--seed",
        "7",
        "--trials",
        "5",
        "--json",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["reports"][0]["suite"], "dst");
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = latval(&["verify", "--suite", "bogus", "--dim", "2"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_broken_operator_fails_with_counterexample() {
    let out = latval(&[
        "verify", "--suite", "broken-z-ab", "--dim", "2", "--seed", "3", "--trials", "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["passed"], false);
    let failures = doc["reports"][0]["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    // the counterexample carries re-runnable serialized inputs
    assert!(failures[0]["input"].as_str().unwrap().contains("vertices"));
}

#[test]
fn decomp_documents() {
    let out = latval(&["decomp", "cube", "--dim", "3"]);
    let v = stdout_json(&out);
    assert_eq!(v["cells"].as_array().unwrap().len(), 6);

    let out = latval(&["decomp", "prism", "--dim", "3"]);
    let v = stdout_json(&out);
    assert_eq!(v["cells"].as_array().unwrap().len(), 3);

    let out = latval(&["decomp", "grid", "--dim", "2", "--k", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["cells"].as_array().unwrap().len(), 4);

    let out = latval(&["decomp", "corner", "--dim", "2"]);
    let v = stdout_json(&out);
    assert_eq!(
        v["intersection"]["vertices"],
        serde_json::json!([["0", "1"], ["1", "0"]])
    );

    let out = latval(&["decomp", "donut", "--dim", "2"]);
    assert_eq!(out.status.code(), Some(4));
}
