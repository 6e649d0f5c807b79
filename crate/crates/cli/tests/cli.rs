use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynatomic"))
        .args(args)
        .env_remove("DYNATOMIC_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn mult_reports_library_values() {
    let map = data("char3.json");
    let v = json(&["mult", "--map", &map, "--point", "0,0", "--n", "3"]);
    let r = &v["result"];
    // the same numbers the library certifies with both colength algorithms
    assert_eq!(r["a"], 5);
    assert_eq!(r["a_star"], 3);
    assert_eq!(r["primitive_period"], 1);
    assert_eq!(v["config"]["seed"], 1);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn squaring_at_a_superattracting_point() {
    let map = data("square_affine.json");
    let v = json(&["mult", "--map", &map, "--point", "0", "--n", "7"]);
    assert_eq!(v["result"]["a"], 1);
    assert_eq!(v["result"]["a_star"], 0);
}

#[test]
fn non_periodic_point_has_zero_multiplicity() {
    // 2 -> 4 -> 1 -> 1 under z^2 over F_5
    let map = data("square_affine.json");
    let v = json(&["mult", "--map", &map, "--point", "2", "--n", "3"]);
    assert_eq!(v["result"]["a"], 0);
    assert_eq!(v["result"]["a_star"], 0);
}

#[test]
fn mult_refuses_degenerate_iterates() {
    let map = data("involution.json");
    let out = run(&["mult", "--map", &map, "--point", "0", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));
}

#[test]
fn cycle_of_squaring_on_the_line() {
    // z^2 over F_3, n = 2: z^4 = z gives 0, ∞ and z^3 = 1, a triple root at 1
    let map = data("square_p1.json");
    let v = json(&["cycle", "--map", &map, "--n", "2", "--ext-bound", "2"]);
    let r = &v["result"];
    assert_eq!(r["degree_phi"], 5);
    assert_eq!(r["expected_degree_phi"], 5);
    let one = r["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["point"] == serde_json::json!(["1", "1"]))
        .unwrap();
    assert_eq!(one["mult_n"], 3);
    assert_eq!(one["mult_star_n"], 2);
    assert_eq!(r["warnings"].as_array().unwrap().len(), 0);
}

#[test]
fn cycle_warns_when_the_extension_bound_is_small() {
    // z^2 over F_5, n = 2 needs z^3 = 1, whose nontrivial roots live in F_25
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("sq5.json");
    std::fs::write(
        &path,
        std::fs::read_to_string(data("square_p1.json"))
            .unwrap()
            .replace("\"p\": 3", "\"p\": 5"),
    )
    .unwrap();
    let p = path.display().to_string();
    let v = json(&["cycle", "--map", &p, "--n", "2", "--ext-bound", "1"]);
    assert_eq!(v["result"]["degree_phi"], 3);
    assert!(v["result"]["warnings"][0].as_str().unwrap().contains("extension bound"));
    let v = json(&["cycle", "--map", &p, "--n", "2", "--ext-bound", "2"]);
    assert_eq!(v["result"]["degree_phi"], 5);
}

#[test]
fn fuzz_verification_passes() {
    let v = json(&["verify", "--seed", "1", "--count", "10", "--prime", "3", "--n-max", "6"]);
    let summary = v["result"]["summary"].as_object().unwrap();
    assert!(summary.contains_key("effectivity"));
    for (theorem, counts) in summary {
        assert_eq!(counts["fail"], 0, "{theorem}");
    }
    assert!(v.get("violations").is_none());
}

#[test]
fn worked_example_is_exempt_when_p_divides_n() {
    let map = data("char3.json");
    let v = json(&["verify", "--map", &map, "--n-max", "3"]);
    let origin = &v["result"]["cases"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["point"] == serde_json::json!(["0", "0"]))
        .unwrap()["verdicts"];
    let entry = origin
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["theorem"] == "non-primitive-multiplicity" && e["at"] == "n=3")
        .unwrap();
    assert_eq!(entry["status"], "vacuous");
    assert_eq!(entry["witness"]["reason"], "p | n");
}

#[test]
fn linear_involution_reports_degenerate_entries() {
    let map = data("involution.json");
    let v = json(&["verify", "--map", &map, "--n-max", "2"]);
    let cases = v["result"]["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 5);
    for c in cases {
        assert_eq!(c["degenerate_n"], serde_json::json!([2]));
    }
}

#[test]
fn degree_and_lefschetz_tables() {
    let v = json(&["degrees", "--dim", "1", "--degree", "2", "--n-max", "3"]);
    let degs: Vec<i64> = v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["deg_phi"].as_i64().unwrap())
        .collect();
    assert_eq!(degs, [3, 5, 9]);
    let v = json(&["lefschetz", "--n-max", "2"]);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows[0]["L"], 36);
    assert_eq!(rows[1]["L"], 216);
    assert_eq!(rows[0]["l"], 36);
}

#[test]
fn spectral_of_the_worked_example() {
    let map = data("char3.json");
    let v = json(&["spectral", "--map", &map, "--point", "0,0"]);
    let orders: Vec<i64> = v["result"]["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["order"].as_i64().unwrap())
        .collect();
    assert_eq!(orders, [1, 2]);
}

#[test]
fn reports_are_reproducible() {
    let args = ["verify", "--seed", "4", "--count", "4", "--prime", "2", "--n-max", "4"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_dynatomic"))
        .args(args)
        .env("DYNATOMIC_THREADS", "1")
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_output_and_out_file() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("deg.csv");
    let o = out.display().to_string();
    let res = run(&["degrees", "--n-max", "2", "--format", "csv", "--out", &o]);
    assert!(res.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# dynatomic"));
    assert_eq!(lines[1], "n,deg_phi,deg_phi_star,prime_positivity");
    assert_eq!(lines[3], "2,5,2,pass");
}

#[test]
fn missing_inputs_are_hard_errors() {
    let out = run(&["mult", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--map"));
}
