use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic-hecke"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn normalize_is_byte_stable() {
    let args = ["normalize", "--n", "3", "1 -2 1 -2 1"];
    let (x, y) = (run(&args), run(&args));
    assert_eq!(x.status.code(), Some(0));
    assert_eq!(x.stdout, y.stdout);
    let v = json(&x);
    assert_eq!(v["header"]["dim"], 24);
    assert_eq!(v["input"]["word"], serde_json::json!([1, -2, 1, -2, 1]));
    assert!(v["result"]["terms"][0]["coeff"]["terms"].is_array());
}

#[test]
fn mul_matches_normalize() {
    let m = json(&run(&["mul", "--n", "3", "1 -2", "1 -2 1"]));
    let n = json(&run(&["normalize", "--n", "3", "1 -2 1 -2 1"]));
    assert_eq!(m["result"], n["result"]);
}

#[test]
fn specialized_output() {
    let v = json(&run(&[
        "normalize",
        "--n",
        "2",
        "1 1 1",
        "--prime",
        "7",
        "--a",
        "1",
        "--b",
        "2",
        "--c",
        "3",
    ]));
    assert_eq!(v["point"]["p"], 7);
    assert!(v["result"]["terms"][0]["coeff"].is_string());
}

#[test]
fn basis_and_table() {
    let b = json(&run(&["basis", "--n", "3"]));
    assert_eq!(b["words"].as_array().unwrap().len(), 24);
    let t = json(&run(&["table", "--n", "3", "--gen", "-2"]));
    assert_eq!(t["table"]["gen"], -2);
    assert_eq!(t["table"]["cols"].as_array().unwrap().len(), 24);
}

#[test]
fn rank_by_enumeration() {
    let v = json(&run(&[
        "rank", "--n", "4", "--prime", "65521", "--a", "3", "--b", "5", "--c", "7",
    ]));
    assert_eq!(v["rank"], 648);
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["normalize", "--n", "3", "1 7"]).status.code(),
        Some(64)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(
        run(&["table", "--n", "3", "--gen", "1", "--prime", "5", "--c", "5"])
            .status
            .code(),
        Some(64)
    );
    let deep = run(&[
        "normalize",
        "--n",
        "3",
        "2 -1 2 -1 2 -1 2 -1",
        "--depth-limit",
        "0",
    ]);
    assert_eq!(deep.status.code(), Some(2));
}

#[test]
fn verify_relations_report() {
    let out = run(&[
        "verify",
        "--suite",
        "relations",
        "--mode",
        "exact",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite"], "relations");
    assert_eq!(v["seed"], 3);
    let first = &v["results"][0];
    assert_eq!(first["status"], "pass");
    assert!(first["id"].as_str().unwrap().starts_with("REL.n2"));
    assert!(first["anchor"].is_string());
}
