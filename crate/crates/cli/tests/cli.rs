use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pclab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pclab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_graph(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn sample_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for p in [&a, &b] {
        let out = pclab(&["sample", "--model", "gnp", "--n", "50", "--d", "3", "--seed", "9", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
        assert_eq!(json(&out)["n"], 50);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let out = pclab(&["sample", "--model", "regular", "--n", "4", "--d", "3", "--seed", "7"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().next(), Some("4 6"));
    let out = pclab(&["sample", "--model", "gnp", "--n", "10", "--d", "0", "--seed", "1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "10 0");
}

#[test]
fn encode_triangle_as_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "t.txt", "3 3\n0 1\n0 2\n1 2\n");
    let out = pclab(&["encode", "--graph", &g, "--k", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "p cnf 9 21"));
}

#[test]
fn mindegree_and_closure() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write_graph(dir.path(), "t.txt", "3 3\n0 1\n0 2\n1 2\n");
    let out = pclab(&["mindegree", "--graph", &tri, "--k", "2", "--field", "2", "--dmax", "6"]);
    assert_eq!(json(&out)["value"], 2);

    let c4 = write_graph(dir.path(), "c4.txt", "4 4\n0 1\n0 3\n1 2\n2 3\n");
    let out = pclab(&["closure", "--graph", &c4, "--set", "1,3"]);
    let v = json(&out);
    assert_eq!(v["size"], 4);
    assert!(v["witness"].is_array());
}

#[test]
fn verify_reports_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_graph(dir.path(), "k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let out = pclab(&["verify", "--graph", &k4, "--k", "3", "--delta", "10", "--degree", "2", "--seed", "1", "--samples", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["satisfiability"]["status"], "fail");
    assert!(v["min_refutation_degree"]["value"].is_u64());
    assert_eq!(v["report"]["seed"], 1);

    let out = pclab(&["tdelta", "--graph", &k4, "--delta", "2", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("delta,"));
}

#[test]
fn resgame_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write_graph(dir.path(), "k5.txt", "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    let tr = dir.path().join("tr.jsonl");
    let out = pclab(&[
        "resgame", "--graph", &k5, "--k", "4", "--width", "5", "--seed", "3", "--transcript", tr.to_str().unwrap(),
    ]);
    let v = json(&out);
    assert_eq!(v["outcome"]["result"], "prover-won");
    assert_eq!(v["witness_reverified"], true);
    assert!(fs::read_to_string(tr).unwrap().lines().count() >= 1);
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = pclab(&["encode", "--graph", "/nonexistent/graph.txt", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["kind"], "io");

    let bad = write_graph(dir.path(), "bad.txt", "3 1\n0 0\n");
    let out = pclab(&["encode", "--graph", &bad, "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = pclab(&["sample", "--model", "regular", "--n", "5", "--d", "3", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = pclab(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    let big = write_graph(dir.path(), "k12.txt", &{
        let mut s = String::from("12 66\n");
        for u in 0..12 {
            for v in u + 1..12 {
                s.push_str(&format!("{u} {v}\n"));
            }
        }
        s
    });
    let out = pclab(&["sparsity", "--graph", &big, "--ell", "12", "--epsilon", "1/2"]);
    assert_eq!(json(&out)["sparse"], false);
    let dense = dir.path().join("dense.txt");
    let out = pclab(&["sample", "--model", "gnp", "--n", "300", "--d", "12", "--seed", "2", "--out", dense.to_str().unwrap()]);
    assert!(out.status.success());
    let out = pclab(&["sparsity", "--graph", dense.to_str().unwrap(), "--ell", "25", "--epsilon", "3", "--budget", "500"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["kind"], "resource");

    let out = pclab(&["mindegree", "--graph", &big, "--k", "11", "--dmax", "40"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], "none");
}
