use std::process::{Command, Output};

use serde_json::Value;

fn fock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fock")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn ok(args: &[&str]) -> Value {
    let out = fock(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    json_of(&out)
}

#[test]
fn expect_q_factorial_example() {
    let out = fock(&["expect", "--model", "q", "--word", "a1 a1 c1 c1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"poly":"1+q"}"#);
}

#[test]
fn expect_models() {
    assert_eq!(ok(&["expect", "--model", "N", "--word", "a1 a1 c1 c1"])["poly"], "1+t");
    assert_eq!(ok(&["expect", "--model", "N", "--N", "2", "--word", "a1 a1 c1 c1"])["value"], "3/2");
    assert_eq!(ok(&["expect", "--model", "vk", "--alpha", "1/2,1/2", "--word", "a1(1) c1(0)"])["value"], "1/2");
    assert_eq!(ok(&["expect", "--model", "free", "--word", "a1 a2 c1 c2"])["value"], "0");
    assert_eq!(ok(&["expect", "--word", "a1 a2 c1 c2"])["poly"], "q");
    let gauged = ok(&["expect", "--q", "1/2", "--gauge", "1=1/3", "--word", "a1 g1@1 c1"]);
    assert_eq!(gauged["value"], "1/3");
}

#[test]
fn temporal_order_reverses_words() {
    let a = ok(&["expect", "--word", "a1 a1 c1 c1"]);
    let b = ok(&["--order", "temporal", "expect", "--word", "c1 c1 a1 a1"]);
    assert_eq!(a, b);
}

#[test]
fn cumulants() {
    let k = ok(&["cumulant", "--model", "q", "--vars", "a1+c1,a1+c1", "--partition", "12"]);
    assert_eq!(k["poly"], "1");
    assert_eq!(ok(&["cumulant", "--vars", "a1,a1,c1^2"])["poly"], "1+q");
    assert_eq!(ok(&["cumulant", "--vars", "a1+c1,a1+c1", "--partition", "1|2"])["poly"], "0");
}

#[test]
fn graph_polynomials() {
    let out = fock(&["coverpoly", "--edges", "1->1 1->2 2->1 2->2"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"poly":"x^2+x"}"#);
    let j = r#"{"weights":[1,1],"edges":[[1,1],[1,2],[2,1],[2,2]]}"#;
    assert_eq!(ok(&["coverpoly", "--json", j])["poly"], "x^2+x");
    let brute = ok(&["coverpoly", "--json", j, "--variant", "factorial", "--method", "brute-force"]);
    assert_eq!(brute, ok(&["coverpoly", "--json", j, "--variant", "factorial"]));
    let ind = ok(&["indicator", "--word", "a1(0) a1(0) c1(0) c1(0)", "--alpha", "1/2,1/2"]);
    assert_eq!(ind["value"], "3/2");
    let g = ok(&["digraph", "--word", "a1 a2 c1 c2"]);
    assert_eq!(g["edges"], serde_json::json!([[1, 2], [2, 1]]));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "graph-oracles", "--seed", "7"];
    assert_eq!(fock(&args).stdout, fock(&args).stdout);
    let pretty = fock(&["--pretty", "expect", "--word", "a1 c1"]);
    assert!(String::from_utf8_lossy(&pretty.stdout).contains('\n'));
}

#[test]
fn exit_codes() {
    assert_eq!(fock(&["expect", "--bogus"]).status.code(), Some(64));
    assert_eq!(fock(&["frobnicate"]).status.code(), Some(64));
    let bad = fock(&["expect", "--word", "x1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(json_of(&bad)["error"].is_string());
    assert_eq!(fock(&["expect", "--model", "vk", "--word", "a1 c1"]).status.code(), Some(1));
    assert_eq!(fock(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_file() {
    let dir = std::env::temp_dir().join(format!("fock-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.toml");
    std::fs::write(&path, "truncation = 1\nalphabet = [\"1/2\", \"1/2\"]\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(ok(&["--config", p, "expect", "--model", "vk", "--word", "a1 c1"])["value"], "1");
    assert_eq!(fock(&["--config", p, "expect", "--word", "a1 a1 c1 c1"]).status.code(), Some(1));
    std::fs::write(&path, "colour = 3\n").unwrap();
    assert_eq!(fock(&["--config", p, "expect", "--word", "a1 c1"]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_all_with_report() {
    let path = std::env::temp_dir().join(format!("fock-report-{}.json", std::process::id()));
    let out = fock(&["verify", "all", "--max-len", "6", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let summary = json_of(&out);
    assert_eq!(summary["passed"], true);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let suites = report["suites"].as_array().unwrap();
    assert_eq!(suites.len(), summary["suites"].as_array().unwrap().len());
    let oracle = suites.iter().find(|s| s["name"] == "Fock state oracle").unwrap();
    assert_eq!(oracle["instances"].as_array().unwrap().len(), oracle["checked"].as_u64().unwrap() as usize);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn verify_single_targets() {
    for target in ["toeplitz", "vanishing", "product-formula", "good"] {
        let v = ok(&["verify", target, "--max-len", "4", "--max-n", "3"]);
        assert_eq!(v["passed"], true, "{target}");
    }
}
