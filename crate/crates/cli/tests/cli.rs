use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn gammalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammalab"))
        .args(args)
        .env_remove("GAMMALAB_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("UTF-8 output")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = gammalab(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).expect("valid JSON")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()))
}

#[test]
fn stats_records() {
    let v = json(&["stats", "246135"]);
    assert_eq!(v["des"], 1);
    assert_eq!(v["ides"], 3);
    assert_eq!(v["descent_set"], serde_json::json!([3]));
    // no proper interval: 246135 is simple
    assert_eq!(v["simple"], true);
    assert_eq!(v["in_h5"], false);

    assert_eq!(json(&["stats", "3517246"])["simple"], true);
    let one = json(&["stats", "1"]);
    assert_eq!((one["des"].as_u64(), one["ides"].as_u64()), (Some(0), Some(0)));
    let spaced = json(&["stats", "2", "4", "6", "1", "3", "5"]);
    assert_eq!(spaced["permutation"], "2 4 6 1 3 5");
}

#[test]
fn decompose_records() {
    let v = json(&["decompose", "452398167"]);
    assert_eq!(v["tree"], "2413[21[12[.,.],12[.,.]],21[.,.],.,12[.,.]]");
    assert_eq!(v["r_odd"], 3);
    assert_eq!(json(&["decompose", "1"])["tree"], ".");
    assert_eq!(json(&["decompose", "123"])["tree"], "12[12[.,.],.]");
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 4] = [
        (&["--format", "json", "poly", "--target", "eulerian", "--n", "4"], "poly_eulerian_4.json"),
        (&["--format", "json", "decompose", "452398167"], "decompose_452398167.json"),
        (&["--format", "json", "verify", "--suite", "system", "--max-n", "6"], "verify_system_6.json"),
        (&["--format", "csv", "poly", "--target", "simple", "--n", "5"], "poly_simple_5.csv"),
    ];
    for (args, file) in cases {
        let out = gammalab(args);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(stdout(&out), golden(file), "{args:?}");
    }
}

fn gamma_pairs(v: &Value) -> Vec<(u64, u64, i64)> {
    v["gamma"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["i"].as_u64().unwrap(), e["j"].as_u64().unwrap(), e["c"].as_i64().unwrap()))
        .collect()
}

#[test]
fn poly_targets() {
    let a4 = json(&["poly", "--target", "eulerian", "--n", "4", "--method", "enumerate"]);
    assert_eq!(a4["polynomial"], "1 + 10*s*t + s*t^2 + s^2*t + 10*s^2*t^2 + s^3*t^3");
    assert_eq!(gamma_pairs(&a4), vec![(0, 0, 1), (1, 0, 7), (1, 1, 1)]);
    assert_eq!(a4["positive"], true);

    for method in ["inversion", "enumerate"] {
        let s6 = json(&["poly", "--target", "simple", "--n", "6", "--method", method]);
        assert_eq!(s6["method"], method);
        assert_eq!(gamma_pairs(&s6), vec![(1, 2, 1), (2, 0, 5), (2, 1, 14)]);
    }
    let s3 = json(&["poly", "--target", "simple", "--n", "3"]);
    assert_eq!(s3["polynomial"], "0");

    let sep = json(&["poly", "--target", "separable", "--n", "5"]);
    let total: i64 = sep["terms"]["terms"].as_array().unwrap().iter().map(|t| t["c"].as_i64().unwrap()).sum();
    assert_eq!(total, 90);
    let h5 = json(&["poly", "--target", "h5", "--n", "5"]);
    assert_eq!(gamma_pairs(&h5), vec![(0, 0, 1), (1, 0, 16), (1, 1, 6), (2, 0, 16)]);
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "--suite", "conjecture", "--max-n", "12"][..],
        &["verify", "--suite", "reduction", "--max-n", "7"],
        &["verify", "--suite", "system", "--max-n", "6"],
        &["verify", "--suite", "lemma39", "--max-n", "7"],
        &["verify", "--suite", "properties", "--seed", "11"],
    ] {
        let v = json(args);
        assert_eq!(v["passed"], true, "{args:?}");
    }
    let text = stdout(&gammalab(&["verify", "--suite", "conjecture", "--max-n", "6"]));
    assert!(text.lines().last().unwrap().ends_with("PASS"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn exit_codes() {
    let parse = gammalab(&["stats", "1 3"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("position 3"));
    assert_eq!(gammalab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gammalab(&["poly", "--target", "eulerian", "--n", "4", "--method", "inversion"]).status.code(), Some(2));
    assert_eq!(gammalab(&["class", "246135"]).status.code(), Some(2));

    let big = gammalab(&["poly", "--target", "simple", "--n", "11", "--method", "enumerate"]);
    assert_eq!(big.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&big.stderr);
    assert!(msg.contains("--method inversion") && msg.contains("--long-run"), "{msg}");
    assert_eq!(gammalab(&["poly", "--target", "eulerian", "--n", "15"]).status.code(), Some(3));
    assert_eq!(gammalab(&["verify", "--suite", "reduction", "--max-n", "11"]).status.code(), Some(3));
}

#[test]
fn deterministic_across_thread_counts() {
    let args = ["--format", "json", "verify", "--suite", "lemma39", "--max-n", "6"];
    let one = gammalab(&[&["--threads", "1"][..], &args].concat());
    let many = gammalab(&[&["--threads", "4"][..], &args].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);

    let env = Command::new(env!("CARGO_BIN_EXE_gammalab"))
        .args(args)
        .env("GAMMALAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(env.stdout, one.stdout);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("gammalab-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("class.json");
    let out = gammalab(&["--format", "json", "--output", path.to_str().unwrap(), "class", "2413"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["members"], serde_json::json!(["2 4 1 3", "3 1 4 2"]));
    assert_eq!(v["polynomial"], "s*t^2 + s^2*t");
    std::fs::remove_dir_all(&dir).unwrap();
}
