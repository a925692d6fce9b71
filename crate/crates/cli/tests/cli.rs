use std::process::Command;

use derham_cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(std::iter::once("derham").chain(args.iter().copied()));
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    (out.code, serde_json::from_str(&out.stdout).unwrap())
}

#[test]
fn cohomology_of_c4() {
    let (code, v) = json(&["cohomology", &fixture("c4.txt")]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!((v["b0"].as_u64(), v["b1"].as_u64()), (Some(1), Some(1)));
    assert_eq!(v["h1"]["supports"][0]["edges"].as_array().unwrap().len(), 4);
    assert_eq!(v["h0"]["basis"][0], serde_json::json!(["1", "1", "1", "1"]));
}

#[test]
fn action_on_c5_has_order_two() {
    let (code, v) = json(&["action", "--degree", "1", &fixture("c5.txt")]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["image_order"], 2);
    assert_eq!(v["kernel_order"], 5);
    assert_eq!(v["aut_order"], 10);
}

#[test]
fn verify_all_passes_on_lollipop_and_dumbbell() {
    for name in ["lollipop.txt", "dumbbell.txt"] {
        let (code, v) = json(&["verify-all", &fixture(name)]);
        assert_eq!(code, EXIT_PASS, "{v}");
        assert_eq!(v["all_pass"], true);
    }
    let (_, v) = json(&["verify-all", &fixture("dumbbell.txt")]);
    assert_eq!(v["checks"]["kernel_interpretation"], true);
    assert_eq!(v["checks"]["splitting"], true);
}

#[test]
fn reports_are_deterministic_with_sorted_keys() {
    let a = run(["derham", "decompose", &fixture("dumbbell.txt")]);
    let b = run(["derham", "decompose", &fixture("dumbbell.txt")]);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(v["layers"], serde_json::json!([[7]]));
}

#[test]
fn integrals_and_stokes() {
    let (_, v) = json(&["integrate", &fixture("c4.txt"), "--form", "1,1/2,0,-3"]);
    // every vertex of a cycle has net degree zero
    assert_eq!(v["integral"], "0");
    let (_, v) = json(&["integrate", &fixture("c4.txt"), "--degree", "1", "--form", "1,1,1,1"]);
    assert_eq!(v["integral"], "4");
    let (code, v) = json(&["stokes", &fixture("lollipop.txt"), "--form", "1,2,3,4,5", "--edges", "3,4"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["vertex_side"], v["edge_side"]);
    // the path 2 → 3 → 4 has net degrees -1, 0, 1
    assert_eq!(v["vertex_side"], "2");
}

#[test]
fn hodge_and_mv() {
    let (code, v) = json(&["hodge", &fixture("c4.txt"), "--form", "1,0,0,0"]);
    assert_eq!(code, EXIT_PASS);
    // the fixture lists `3 0`, so all four edges run around the cycle the same way
    assert_eq!(v["parts"]["harmonic"], serde_json::json!(["1/4", "1/4", "1/4", "1/4"]));
    let (code, v) = json(&["mv", &fixture("c4.txt"), "--a-edges", "0,1"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["dims"], serde_json::json!([1, 2, 2, 1, 0, 0]));
    assert_eq!(v["connecting_rank"], 1);
}

#[test]
fn natural_orientation_and_sweep() {
    let (code, v) = json(&["natorient", &fixture("dumbbell.txt")]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["witness"]["verified"], true);
    assert_eq!(v["witness"]["supports"].as_array().unwrap().len(), 2);
    let (code, v) = json(&["sweep", "--max-vertices", "5"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["total"], 1 + 1 + 2 + 6 + 21);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(run(["derham", "cohomology", &fixture("loop.txt")]).code, EXIT_USAGE);
    assert!(run(["derham", "cohomology", &fixture("loop.txt")]).stderr.contains("line 3"));
    assert_eq!(run(["derham", "frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(["derham", "action", "--degree", "2", &fixture("c4.txt")]).code, EXIT_USAGE);
    assert_eq!(run(["derham", "sweep", "--max-vertices", "9"]).code, EXIT_USAGE);
    assert_ne!(EXIT_FAIL, EXIT_USAGE);
}

#[test]
fn binary_writes_reports_to_a_file() {
    let dir = std::env::temp_dir().join(format!("derham-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("aut.json");
    let status = Command::new(env!("CARGO_BIN_EXE_derham"))
        .args(["aut", &fixture("c5.txt"), "--out", out.to_str().unwrap()])
        .status()
        .unwrap();
    assert!(status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["order"], 10);
    let bad = Command::new(env!("CARGO_BIN_EXE_derham")).args(["aut", &fixture("loop.txt")]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    std::fs::remove_dir_all(&dir).unwrap();
}
