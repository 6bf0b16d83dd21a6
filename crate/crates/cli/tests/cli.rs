use std::process::{Command, Output};

use serde_json::Value;

fn artin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin"))
        .args(args)
        .env_remove("ARTIN_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn rational_values(v: &Value) -> Vec<String> {
    // every value here is rational, i.e. only the constant coefficient may be nonzero
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| {
            let coeffs = x["coeffs"].as_array().unwrap();
            assert!(coeffs[1..].iter().all(|c| c == "0"), "irrational value {x}");
            coeffs[0].as_str().unwrap().to_string()
        })
        .collect()
}

#[test]
fn c2_table() {
    let out = artin(&["table", "C2"]);
    assert!(out.status.success());
    let t = json(&out);
    let rows: Vec<Vec<String>> = t["irreducibles"].as_array().unwrap().iter().map(rational_values).collect();
    assert_eq!(rows, vec![vec!["1", "1"], vec!["1", "-1"]]);
}

#[test]
fn s3_table_pretty() {
    let out = artin(&["table", "S3", "--pretty"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("X.2"), "{text}");
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with("X.")).count(), 3);
}

#[test]
fn malformed_cycle_is_an_input_error() {
    let out = artin(&["table", "(0 0 1)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("generator 0"));
}

#[test]
fn order_bound_exit_code() {
    let out = artin(&["table", "S6", "--max-order", "100"]);
    assert_eq!(out.status.code(), Some(3));
    let env = Command::new(env!("CARGO_BIN_EXE_artin"))
        .args(["table", "S5"])
        .env("ARTIN_MAX_ORDER", "50")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
}

#[test]
fn decompose_s3_standard() {
    let out = artin(&["decompose", "S3", "--char", "2"]);
    assert!(out.status.success());
    let d = json(&out);
    assert_eq!(d["verified"], true);
    assert_eq!(d["terms"].as_array().unwrap().len(), 2);
    // Σ c_H [G:H] is the degree 2
    let degree: f64 = d["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let c = t["coefficient"].as_str().unwrap();
            let (n, den) = c.split_once('/').unwrap_or((c, "1"));
            n.parse::<f64>().unwrap() / den.parse::<f64>().unwrap() * (6 / t["subgroup_order"].as_u64().unwrap()) as f64
        })
        .sum();
    assert_eq!(degree, 2.0);

    let all = json(&artin(&["decompose", "S3", "--char", "2", "--all-subgroups"]));
    let coefficients: Vec<(u64, &str)> = all["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["subgroup_order"].as_u64().unwrap(), t["coefficient"].as_str().unwrap()))
        .collect();
    assert_eq!(coefficients, vec![(6, "-1"), (2, "1")]);
}

#[test]
fn decompose_q8_two_dimensional() {
    let d = json(&artin(&["decompose", "Q8", "--char", "4"]));
    let coefficients: Vec<(u64, &str)> = d["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["subgroup_order"].as_u64().unwrap(), t["coefficient"].as_str().unwrap()))
        .collect();
    assert_eq!(coefficients, vec![(2, "-1/2"), (1, "1/2")]);
}

#[test]
fn decompose_irrational_is_rejected() {
    let out = artin(&["decompose", "C3", "--char", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not rational") && err.contains("galois-average"), "{err}");
    let ok = artin(&["decompose", "C3", "--char", "galois-average:1"]);
    assert!(ok.status.success());
}

#[test]
fn explicit_value_vector() {
    // S3 classes are (e, 3-cycles, transpositions): the sign character
    let out = artin(&["decompose", "S3", "--char", "[1, 1, -1]"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let bad = artin(&["decompose", "S3", "--char", "[1, 1]"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn certify_and_check_round_trip() {
    let out = artin(&["certify", "C5", "--char", "1"]);
    assert!(out.status.success());
    let c = json(&out);
    assert_eq!(c["checked"], true);
    assert_eq!(c["certificate"]["schema"], "artin-cert/1");
    assert_eq!(c["certificate"]["orbit"].as_array().unwrap().len(), 4);
    assert_eq!(c["kernelConclusion"]["inputRational"], false);

    let dir = std::env::temp_dir().join(format!("artin-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, &out.stdout).unwrap();
    let check = artin(&["check", good.to_str().unwrap()]);
    assert!(check.status.success());
    assert_eq!(json(&check)["valid"], true);

    let mut tampered = c["certificate"].clone();
    tampered["decomposition"]["terms"][0]["coefficient"] = Value::String("5/7".into());
    let bad = dir.join("bad.json");
    std::fs::write(&bad, serde_json::to_vec(&tampered).unwrap()).unwrap();
    let check = artin(&["check", bad.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(1));
    assert_eq!(json(&check)["valid"], false);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn certify_s3_standard_doubles() {
    let c = json(&artin(&["certify", "S3", "--char", "2"]));
    let input = rational_values(&c["certificate"]["inputCharacter"]);
    let sum = rational_values(&c["certificate"]["orbitSum"]);
    let doubled: Vec<String> = input.iter().map(|v| (2 * v.parse::<i64>().unwrap()).to_string()).collect();
    assert_eq!(sum, doubled);
    assert_eq!(c["kernelConclusion"]["inputScalar"], "1/2");
}

#[test]
fn corpus_manifest_runs() {
    let dir = std::env::temp_dir().join(format!("artin-corpus-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    std::fs::write(&path, r#"{"groups": [{"group": "S3", "order": 6}, "C4", "Q8"]}"#).unwrap();
    let p = path.to_str().unwrap();
    let a = artin(&["corpus", "--manifest", p, "--jobs", "2"]);
    assert!(a.status.success());
    let b = artin(&["corpus", "--manifest", p, "--jobs", "1"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["passed"], 3);

    let bounded = artin(&["corpus", "--manifest", p, "--max-order", "1"]);
    assert_eq!(bounded.status.code(), Some(3));
    assert_eq!(json(&bounded)["resource_errors"], 3);

    std::fs::write(&path, r#"{"groups": []}"#).unwrap();
    let empty = artin(&["corpus", "--manifest", p]);
    assert!(empty.status.success());
    assert_eq!(json(&empty)["groups"], Value::Array(vec![]));
    std::fs::remove_dir_all(&dir).unwrap();
}
