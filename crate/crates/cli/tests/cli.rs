use std::fs;
use std::process::{Command, Output};

use khm_core::catalog::catalog;
use khm_core::formats::{parse_matrix, write_matrix};
use khm_core::kimura::{assemble, decompose};
use serde_json::Value;

fn khm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_khm")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn build_verify_round_trip_is_byte_exact() {
    let dir = tempfile::tempdir().unwrap();
    for e in catalog() {
        let path = dir.path().join(format!("{}.khm", e.id));
        let k = e.k.to_string();
        let out = khm(&["build", "--k", &k, "--a", e.a, "--b", e.b, "--c", e.c, "--d", e.d, "--out", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", e.id);
        let text = fs::read_to_string(&path).unwrap();
        let verify = khm(&["--json", "verify", path.to_str().unwrap()]);
        assert_eq!(code(&verify), 0, "{}", e.id);
        assert_eq!(json(&verify)["pass"], true);
        let (k, h) = parse_matrix(&text).unwrap();
        let rebuilt = write_matrix(&assemble(&decompose(&h, k).unwrap()), k);
        assert_eq!(rebuilt, text, "{}", e.id);
    }
}

#[test]
fn verify_catalog_and_failures() {
    let out = khm(&["verify", "catalog:k3"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.khm");
    fs::write(&bad, "KHM k=0 n=2\n++\n++\n").unwrap();
    assert_eq!(code(&khm(&["verify", bad.to_str().unwrap()])), 2);

    let garbled = dir.path().join("garbled.khm");
    fs::write(&garbled, "KHM k=0 n=2\n+x\n++\n").unwrap();
    assert_eq!(code(&khm(&["verify", garbled.to_str().unwrap()])), 4);

    let blocks = dir.path().join("bad.blocks");
    fs::write(&blocks, "k=3\na=1+x\nb=x^^2\nc=1\nd=1\n").unwrap();
    assert_eq!(code(&khm(&["verify", blocks.to_str().unwrap()])), 4);
}

#[test]
fn conjectures_for_k3() {
    let out = khm(&["--json", "conjectures", "catalog:k3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["holds"], true);
    assert_eq!(v["report"]["order"], 144);
    assert_eq!(v["report"]["prime_divisors"], serde_json::json!([2, 3]));
    assert_eq!(v["report"]["factorization"]["r"], 4);
    assert_eq!(v["report"]["factorization"]["s"], 1);
}

#[test]
fn sy_admissibility_exit_codes() {
    assert_eq!(code(&khm(&["sy", "--p", "17"])), 2);
    let out = khm(&["--json", "sy", "--p", "5"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["n"], 44);
    assert_eq!(v["is_hadamard"], true);
    assert_eq!(v["blocks"]["c"], v["blocks"]["d"]);
}

#[test]
fn auts_modes() {
    let out = khm(&["--json", "auts", "catalog:k3", "--constructed"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["report"]["subgroup_order"], 144);

    let out = khm(&["--json", "auts", "catalog:sy5", "--full"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!((v["order"].clone(), v["complete"].clone()), (160.into(), true.into()));

    let out = khm(&["--json", "auts", "catalog:k13", "--full", "--budget", "0.000001"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["complete"], false);
}

#[test]
fn search_writes_results() {
    let dir = tempfile::tempdir().unwrap();
    let out = khm(&["--json", "search", "--k", "3", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["count"], 288);
    let files = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(files, 289);
    assert_eq!(code(&khm(&["verify", dir.path().join("k3_0000.blocks").to_str().unwrap()])), 0);

    assert_eq!(code(&khm(&["search", "--k", "3", "--cap", "1"])), 3);
    let y = khm(&["--json", "search", "--k", "3", "--y-invariant"]);
    assert_eq!(json(&y)["count"], 0);
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        vec!["--json", "verify", "catalog:k13"],
        vec!["--json", "auts", "catalog:k3", "--full"],
        vec!["--json", "search", "--k", "3"],
        vec!["--json", "catalog", "list"],
    ] {
        assert_eq!(khm(&args).stdout, khm(&args).stdout, "{args:?}");
    }
}

#[test]
fn catalog_commands() {
    let v = json(&khm(&["--json", "catalog", "get", "k13"]));
    assert_eq!(v["expected_aut_order"], 832);
    assert_eq!(v["y_invariant"], true);
    assert_ne!(code(&khm(&["catalog", "get", "nope"])), 0);
}

#[test]
fn thread_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_khm"))
        .env("KHM_THREADS", "1")
        .args(["--json", "auts", "catalog:k3", "--full"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["order"], 144);
}
