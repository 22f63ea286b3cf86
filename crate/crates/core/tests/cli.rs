use std::path::PathBuf;

use pmqhur::cli::run;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn pmqhur(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pmqhur").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("pmqhur-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn poincare_free1() {
    let (code, out, _) = pmqhur(&["poincare", "--pmq", &fixture("free1.json"), "--ring", "Z"]);
    assert_eq!(code, 0);
    assert!(out.contains("POINCARE: yes"), "{out}");
    assert!(out.contains("a\t1\t2\tyes\tyes"), "{out}");
}

#[test]
fn validate_planted_defect() {
    let (code, out, _) = pmqhur(&["validate", "--pmq", &fixture("free1_broken.json")]);
    assert_eq!(code, 1);
    assert!(out.contains("a^a = a [a]"), "{out}");
    let (code, out, _) = pmqhur(&["validate", "--pair", &fixture("trans3_s3.json")]);
    assert_eq!((code, out.trim()), (0, "valid"));
}

#[test]
fn complete_json() {
    let (code, out, _) = pmqhur(&[
        "complete",
        "--pmq",
        &fixture("trans3.json"),
        "--max-norm",
        "2",
        "--json",
    ]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    let classes = value["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 9);
    assert_eq!(classes.iter().filter(|c| c["norm"] == 2).count(), 5);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "poincare",
        "--pmq",
        &fixture("trans3.json"),
        "--ring",
        "Q",
        "--json",
    ];
    let first = pmqhur(&args);
    for _ in 0..3 {
        assert_eq!(pmqhur(&args), first);
    }
}

#[test]
fn z2_has_no_norm() {
    let (code, out, _) = pmqhur(&["classify", "--pmq", &fixture("z2.json")]);
    assert_eq!(code, 0);
    assert!(
        out.contains("locally finite: no") && out.contains("cycle: "),
        "{out}"
    );
    let (code, _, err) = pmqhur(&["poincare", "--pmq", &fixture("z2.json")]);
    assert_eq!(code, 1);
    assert!(err.contains("norm unavailable"), "{err}");
}

#[test]
fn input_errors_exit_2() {
    let (code, _, err) = pmqhur(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"), "{err}");
    let bad = scratch(
        "bad.json",
        r#"{"elements": ["1"], "unit": "1", "conj": {"1|1": 5}}"#,
    );
    let (code, _, err) = pmqhur(&["classify", "--pmq", &bad]);
    assert_eq!(code, 2);
    assert!(err.contains("conj.1|1"), "{err}");
    let (code, _, _) = pmqhur(&[
        "homology",
        "--pmq",
        &fixture("free1.json"),
        "--element",
        "b",
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = pmqhur(&[
        "homology",
        "--pmq",
        &fixture("free1.json"),
        "--element",
        "a",
        "--ring",
        "F4",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn homology_and_diagonal_agree() {
    for cmd in ["homology", "diagonal"] {
        let (code, out, _) = pmqhur(&[
            cmd,
            "--pmq",
            &fixture("free1.json"),
            "--element",
            "a",
            "--relative",
            "--json",
        ]);
        assert_eq!(code, 0);
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(value["concentrated"], 2, "{cmd}");
    }
}

#[test]
fn algebra_queries() {
    let trans3 = fixture("trans3.json");
    assert_eq!(
        pmqhur(&["product", "--pmq", &trans3, "(12)", "(13)"])
            .1
            .trim(),
        "undefined"
    );
    assert_eq!(
        pmqhur(&["conj", "--pmq", &trans3, "(12)", "(23)"]).1.trim(),
        "(13)"
    );
    assert_eq!(
        pmqhur(&["hq-conj", "--pmq", &trans3, "(12)", "(23)"])
            .1
            .trim(),
        "(13)"
    );
    assert_eq!(
        pmqhur(&["hq-product", "--pmq", &fixture("free1.json"), "a", "a.a"])
            .1
            .trim(),
        "a.a.a"
    );
    let (code, out, _) = pmqhur(&["decompositions", "--pmq", &trans3, "--element", "(12).(23)"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
    let (_, out, _) = pmqhur(&["sub-pmq", "--pmq", &trans3, "--max-norm", "0"]);
    let sub = pmqhur::io::pmq_from_str(&out).unwrap();
    assert_eq!(sub.len(), 1);
    assert_eq!(pmqhur(&["norm-check", "--pmq", &trans3]).0, 0);
    let (_, out, _) = pmqhur(&["snf", "2 0; 0 3"]);
    assert!(out.contains("factors: [1, 6]"));
}

#[test]
fn array_operations() {
    let trans3 = fixture("trans3.json");
    let ua = "[1 1 1 | 1 (12) 1 | (23) 1 1]";
    let (code, out, _) = pmqhur(&[
        "array", "face-h", "--pmq", &trans3, "--array", ua, "--index", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(0,1)[1 1 1 | (23) (13) 1]");
    assert_eq!(
        pmqhur(&["array", "nondegenerate", "--pmq", &trans3, "--array", ua])
            .1
            .trim(),
        "true"
    );
    assert_eq!(
        pmqhur(&["array", "admissible", "--pmq", &trans3, "--array", ua])
            .1
            .trim(),
        "false"
    );
    let (code, _, _) = pmqhur(&[
        "array", "face-v", "--pmq", &trans3, "--array", ua, "--index", "5",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn cells_listing() {
    let (code, out, _) = pmqhur(&[
        "cells",
        "--pmq",
        &fixture("free1.json"),
        "--element",
        "a",
        "--json",
    ]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(value["total"], 9);
}

#[test]
fn configuration_commands() {
    let pair = fixture("trans3_s3.json");
    let config = scratch(
        "c.json",
        r#"{"sites":[["0","1/2"],["1","1/2"]],"points":[
            {"x":"0","y":"1/2","coarse":"()"},
            {"x":"1/4","y":"1/2","fine":"(12)"},
            {"x":"3/4","y":"1/3","fine":"(23)"},
            {"x":"1","y":"1/2","coarse":"()"}]}"#,
    );
    let (code, out, _) = pmqhur(&["config", "omega", "--pair", &pair, "--config", &config]);
    assert_eq!(code, 0);
    let omega = out.trim().to_string();
    let (_, moved, _) = pmqhur(&[
        "config", "act-left", "--pair", &pair, "--config", &config, "--g", "(12)",
    ]);
    let moved = scratch("moved.json", &moved);
    let (_, left, _) = pmqhur(&["config", "omega", "--pair", &pair, "--config", &moved]);
    assert_ne!(left.trim(), omega);
    let (code, _, err) = pmqhur(&["config", "cell-of", "--pair", &pair, "--config", &config]);
    assert_eq!(code, 1);
    assert!(err.contains("coarse"), "{err}");

    let fine = scratch(
        "f.json",
        r#"{"points":[{"x":"1/4","y":"1/2","fine":"a"},{"x":"3/4","y":"1/2","fine":"a"}]}"#,
    );
    let free1 = fixture("free1.json");
    let (code, out, _) = pmqhur(&[
        "config", "collide", "--pmq", &free1, "--config", &fine, "--xs", "1/2,1/2", "--ys", "1/2",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\"a.a\""), "{out}");
    assert_eq!(
        pmqhur(&["config", "omega-hat", "--pmq", &free1, "--config", &fine])
            .1
            .trim(),
        "a.a"
    );

    let (_, loc, _) = pmqhur(&["config", "cell-of", "--pmq", &free1, "--config", &fine]);
    let loc = scratch("loc.json", &loc);
    let (_, back, _) = pmqhur(&["config", "upsilon", "--pmq", &free1, "--location", &loc]);
    let back: serde_json::Value = serde_json::from_str(&back).unwrap();
    assert_eq!(back["points"].as_array().unwrap().len(), 2);

    let base = scratch(
        "base.json",
        r#"{"points":[{"x":"1/2","y":"1/2","fine":"a.a"}]}"#,
    );
    let cand = scratch(
        "cand.json",
        r#"{"points":[{"x":"3/8","y":"1/2","fine":"a"},{"x":"5/8","y":"1/2","fine":"a"}]}"#,
    );
    let cov = scratch(
        "cov.json",
        r#"{"rects":[{"x":["1/4","3/4"],"y":["1/4","3/4"]}]}"#,
    );
    let args = [
        "config",
        "in-neighborhood",
        "--pmq",
        &free1,
        "--base",
        &base,
        "--config",
        &cand,
        "--covering",
        &cov,
    ];
    assert_eq!(pmqhur(&args).0, 0);
}
