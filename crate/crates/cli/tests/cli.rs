use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn reasm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reasm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn eval_tree_and_arrangement() {
    let v = json(&reasm(&["eval", "--graph", &fixture("q3.g"), "--tree", &fixture("b1.t")]));
    assert_eq!((v["alpha"].as_u64(), v["beta"].as_u64()), (Some(4), Some(48)));
    assert_eq!(v["clusters"].as_array().unwrap().len(), 15);
    let v = json(&reasm(&["eval", "--graph", &fixture("s7.g"), "--arrangement", &fixture("phi5.a")]));
    assert_eq!(v["alpha"], 4);
    assert_eq!(v["beta"], 16);
    assert_eq!(v["gamma"], 16);
}

#[test]
fn eval_ordering_reports_trace() {
    let v = json(&reasm(&["eval", "--graph", &fixture("s7.g"), "--ordering", &fixture("pi3_s7.o")]));
    assert_eq!(v["tree"], "(((((((1 2) 3) 4) 5) 6) 7) 8)");
    assert_eq!(v["beta"], 35);
    assert_eq!(v["trace"]["steps"].as_array().unwrap().len(), 7);
}

#[test]
fn eval_rejects_mismatched_ground_set() {
    let out = reasm(&["eval", "--graph", &fixture("p3.g"), "--tree", &fixture("b1.t")]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("b1.t"));
}

#[test]
fn solve_examples() {
    let v = json(&reasm(&["solve", &fixture("s7.g"), "--objective", "beta", "--mode", "linear"]));
    assert_eq!(v["value"], 29);
    let v = json(&reasm(&[
        "solve", &fixture("k8.g"), "--objective", "beta", "--mode", "binary", "--engine", "brute",
    ]));
    assert_eq!(v["value"], 127);
    let out = reasm(&[
        "solve", &fixture("s7.g"), "--objective", "beta", "--mode", "linear", "--anchor", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_writes_witness_file() {
    let dir = std::env::temp_dir().join(format!("reasm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w.a");
    let v = json(&reasm(&[
        "solve",
        &fixture("s7.g"),
        "--objective",
        "beta",
        "--mode",
        "arrangement",
        "--witness-out",
        path.to_str().unwrap(),
    ]));
    assert_eq!(v["value"], 16);
    let written = std::fs::read_to_string(&path).unwrap();
    let back = json(&reasm(&["eval", "--graph", &fixture("s7.g"), "--arrangement", path.to_str().unwrap()]));
    assert_eq!(back["beta"], 16, "{written}");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn resource_limit_exit_code() {
    let out = Command::new(env!("CARGO_BIN_EXE_reasm"))
        .env("REASM_DP_LIMIT", "4")
        .args(["solve", &fixture("q3.g"), "--objective", "alpha", "--mode", "arrangement"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reduce_examples() {
    let direct = json(&reasm(&["solve", &fixture("p3.g"), "--objective", "beta", "--mode", "arrangement"]));
    let v = json(&reasm(&[
        "--jobs", "2", "reduce", &fixture("p3.g"), "--problem", "beta", "--direction", "r2a",
    ]));
    assert_eq!(v["best"]["beta"], direct["value"]);
    assert_eq!(v["anchors"].as_array().unwrap().len(), 3);
    let v = json(&reasm(&["reduce", &fixture("q3.g"), "--problem", "alpha"]));
    assert_eq!(v["branch"], "via_reassembling");
    let exact = json(&reasm(&["solve", &fixture("q3.g"), "--objective", "alpha", "--mode", "arrangement"]));
    assert_eq!(v["cutwidth"], exact["value"]);
    let out = reasm(&["reduce", &fixture("k8.g"), "--problem", "alpha"]);
    assert_eq!(out.status.code(), Some(2));
    let out = reasm(&["reduce", &fixture("p3.g"), "--problem", "beta"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_prints_one_line_per_check() {
    let out = reasm(&["verify", "--suite", "fixtures"]);
    assert!(out.status.success());
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|l| l["pass"] == true));
    assert_eq!(reasm(&["verify", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn gen_and_convert() {
    let v = json(&reasm(&["gen", "cycle", "-n", "5"]));
    assert_eq!((v["n"].as_u64(), v["m"].as_u64()), (Some(5), Some(5)));
    let v = json(&reasm(&[
        "convert", "--graph", &fixture("q3.g"), "--ordering", &fixture("pi1_q3.o"), "--to", "tree",
    ]));
    assert_eq!(v["object"], "((((1 2) (3 4)) (5 6)) (7 8))");
    let v = json(&reasm(&[
        "convert", "--graph", &fixture("s7.g"), "--arrangement", &fixture("phi3p.a"), "--to", "tree",
    ]));
    assert_eq!(v["object"], "(((((((1 2) 3) 4) 5) 6) 7) 8)");
    let out = reasm(&[
        "convert", "--graph", &fixture("s7.g"), "--tree", &fixture("b1.t"), "--to", "ordering",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pretty_output_is_not_json() {
    let out = reasm(&["--pretty", "eval", "--graph", &fixture("q3.g"), "--tree", &fixture("b3.t")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("alpha"));
    assert!(serde_json::from_str::<Value>(&text).is_err());
}
