use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], cache: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fourier-minors"));
    cmd.args(args).env_remove("FOURIER_MINORS_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("FOURIER_MINORS_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify-minors", "--p", "7", "--q", "17"], None).status.code(), Some(0));
    assert_eq!(run(&["verify-minors", "--p", "11", "--q", "2"], None).status.code(), Some(1));
    assert_eq!(run(&["factor", "--p", "8", "--q", "3"], None).status.code(), Some(2));
    assert_eq!(run(&["factor", "--p", "7", "--q", "7"], None).status.code(), Some(2));
    assert_eq!(run(&["field", "--p", "7", "--q", "2", "--modulus", "X^3 + X^2 + X + 1"], None).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"], None).status.code(), Some(2));
    assert_eq!(run(&["bound", "--p", "13", "--method", "new"], None).status.code(), Some(3));
    assert_eq!(run(&["verify-minors", "--p", "17", "--q", "3"], None).status.code(), Some(3));
}

#[test]
fn envelope_fields() {
    let out = run(&["bound", "--p", "5", "--method", "zhang", "--seed", "7"], None);
    let v = json(&out);
    assert_eq!(v["command"], "bound");
    assert_eq!(v["seed"], 7);
    assert!(v["version"].is_string());
    assert!(v["elapsed_s"].is_number());
    assert_eq!(v["report"]["value"], "8");
}

#[test]
fn table_formats() {
    let csv = run(&["table", "--pmax", "5", "--format", "csv"], None);
    assert_eq!(String::from_utf8_lossy(&csv.stdout), "p,q_new,q_zhang\n2,3,3\n3,2,2\n5,7,13\n");
    let text = run(&["table", "--pmax", "5", "--format", "text"], None);
    let text = String::from_utf8_lossy(&text.stdout).into_owned();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(3).unwrap().ends_with(" 13"));
}

#[test]
fn bound_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = json(&run(&["bound", "--p", "7", "--method", "new"], Some(dir.path())));
    let file = dir.path().join(format!("bound-new-p7-v{}.json", first["version"].as_str().unwrap()));
    let record: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(record["value"], "8");
    assert_eq!(record["p"], 7);
    assert!(record["argmax_A"].is_array() && record["argmax_B"].is_array());
    let second = json(&run(&["bound", "--p", "7", "--method", "new"], Some(dir.path())));
    assert_eq!(second["report"]["value"], first["report"]["value"]);

    let other = tempfile::tempdir().unwrap();
    let flag = run(&["bound", "--p", "5", "--method", "zhang", "--cache-dir", other.path().to_str().unwrap()], None);
    assert_eq!(flag.status.code(), Some(0));
    assert!(std::fs::read_dir(other.path()).unwrap().count() == 1);
}
