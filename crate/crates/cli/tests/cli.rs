use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::{json, Value};

fn dendcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dendcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn enumerate_counts() {
    for (kind, n, count) in [
        ("trees", "2", 2),
        ("nct", "2", 3),
        ("projectives", "3", 5),
        ("ncp", "3", 14),
    ] {
        let out = dendcat(&["enumerate", kind, "--n", n, "--format", "json"]);
        assert_eq!(code(&out), 0, "{kind}");
        let v = stdout_json(&out);
        assert_eq!(v["count"], count, "{kind}");
        assert_eq!(v["items"].as_array().unwrap().len(), count);
    }
    let text = dendcat(&["enumerate", "trees", "--n", "3"]);
    assert!(String::from_utf8(text.stdout).unwrap().ends_with("count 5\n"));
}

#[test]
fn enumerate_out_of_range() {
    assert_eq!(code(&dendcat(&["enumerate", "trees", "--n", "0"])), 2);
    assert_eq!(code(&dendcat(&["enumerate", "nct", "--n", "12"])), 2);
}

#[test]
fn compose_examples() {
    let star = stdout_json(&dendcat(&["compose", "star", "unit", "unit"]));
    assert_eq!(
        star,
        json!({"degree": 2, "terms": [{"tree": "((o o) o)", "coeff": 1}, {"tree": "(o (o o))", "coeff": 1}]})
    );

    let circ = stdout_json(&dendcat(&["compose", "circ", "(o o)", "(o o)", "--i", "1"]));
    assert_eq!(circ, json!({"degree": 1, "terms": [{"tree": "(o o)", "coeff": 1}]}));

    let diese = stdout_json(&dendcat(&["compose", "diese", "sum:2", "sum:2"]));
    let terms = diese["terms"].as_array().unwrap();
    assert_eq!(diese["degree"], 3);
    assert_eq!(terms.len(), 5);
    assert!(terms.iter().all(|t| t["coeff"] == 1));

    let over = stdout_json(&dendcat(&["compose", "over", "unit", "unit"]));
    assert_eq!(over["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn compose_reads_element_json() {
    let elem = r#"{"degree": 2, "terms": [{"tree": "(o (o o))", "coeff": -2}]}"#;
    let out = dendcat(&["compose", "circ", elem, "unit", "-i", "2"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["terms"][0]["coeff"], -2);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    std::fs::write(&path, elem).unwrap();
    let arg = format!("@{}", path.display());
    let out = dendcat(&["compose", "star", &arg, "unit"]);
    assert_eq!(stdout_json(&out)["degree"], 3);
}

#[test]
fn compose_errors() {
    assert_eq!(code(&dendcat(&["compose", "star", "(o o", "unit"])), 2);
    assert_eq!(code(&dendcat(&["compose", "circ", "unit", "unit", "--i", "3"])), 2);
    assert_eq!(code(&dendcat(&["compose", "star", "o", "unit"])), 2);
    assert_eq!(code(&dendcat(&["compose", "frobnicate", "unit", "unit"])), 2);
    let bad = r#"{"degree": 3, "terms": [{"tree": "(o o)", "coeff": 1}]}"#;
    assert_eq!(code(&dendcat(&["compose", "star", bad, "unit"])), 2);
}

#[test]
fn verify_single_suites() {
    let out = dendcat(&["verify", "tamari.regularity", "5"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"][0]["id"], "tamari.regularity");
    assert_eq!(v["suites"][0]["d"], 5);

    let out = dendcat(&["verify", "--suite", "diese.assoc", "--max-degree", "5"]);
    assert_eq!(code(&out), 0);

    let out = dendcat(&["verify", "--suite", "nc", "--max-degree", "4"]);
    let v = stdout_json(&out);
    assert!(v["suites"].as_array().unwrap().len() > 3);
}

#[test]
fn verify_usage_errors() {
    assert_eq!(code(&dendcat(&["verify", "no.such.suite"])), 2);
    assert_eq!(code(&dendcat(&["verify", "all", "10"])), 2);
    assert_eq!(code(&dendcat(&["verify", "all", "0"])), 2);
    assert_eq!(
        code(&dendcat(&["verify", "trees.catalan", "--suite", "tamari.reversal"])),
        2
    );
}

#[test]
fn verify_all_small_degree() {
    let start = Instant::now();
    let out = dendcat(&["verify", "all", "4"]);
    let elapsed = start.elapsed();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    let v = stdout_json(&out);
    let suites = v["suites"].as_array().unwrap();
    assert!(suites.iter().all(|s| s["passed"] == true));
    assert_eq!(
        dendcat(&["verify", "--list"]).stdout.split(|&b| b == b'\n').count() - 1,
        suites.len()
    );
}

#[test]
fn export_objects() {
    let hasse = dendcat(&["export", "hasse", "--n", "3", "--format", "dot"]);
    assert_eq!(code(&hasse), 0);
    let dot = String::from_utf8(hasse.stdout).unwrap();
    assert_eq!(dot.matches(" -> ").count(), 5);

    let theta = stdout_json(&dendcat(&["export", "theta", "--n", "2"]));
    let rows = theta["matrix"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nct3.json");
    let out = dendcat(&["export", "nct", "--n", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["plants"].as_array().unwrap().len(), 12);

    let svg = dendcat(&["export", "ncp", "--n", "3", "--format", "svg"]);
    assert!(String::from_utf8(svg.stdout).unwrap().starts_with("<svg"));
}

#[test]
fn export_unsupported() {
    let out = dendcat(&["export", "theta", "--n", "2", "--format", "dot"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("cannot export theta as dot"));
    assert_eq!(code(&dendcat(&["export", "tau", "--n", "9"])), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["export", "projectives", "--n", "4"][..],
        &["verify", "proj", "4"],
        &["enumerate", "ncp", "--n", "4", "--format", "json"],
    ] {
        assert_eq!(dendcat(args).stdout, dendcat(args).stdout, "{args:?}");
    }
}
