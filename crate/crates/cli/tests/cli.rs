use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn noble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noble")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn three_chain_is_not_noble() {
    let doc = json(&noble(&["nobility", &path("e3.cay")]));
    assert_eq!(doc["verdict"], "not_noble");
    assert!(doc["witness"].is_null());
    assert_eq!(doc["refutation"]["oracle_bound"], 4);
    assert!(doc["refutation"]["candidates"].as_array().unwrap().iter().all(|c| !c["failing_idempotent"].is_null()));
}

#[test]
fn i2_is_noble_on_two_points() {
    let doc = json(&noble(&["nobility", &path("i2.cay")]));
    assert_eq!(doc["verdict"], "noble");
    assert_eq!(doc["witness"]["degree"], 2);
    assert_eq!(doc["witness"]["family_kind"], "orbit");
    for flag in ["is_homomorphism", "is_faithful", "is_transitive"] {
        assert_eq!(doc["witness"]["flags"][flag], "verified-true");
    }
    assert_eq!(doc["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn oracle_finds_nothing_for_three_chain() {
    let doc = json(&noble(&["oracle", &path("e3.cay"), "--max-degree", "4"]));
    assert_eq!(doc["found"], false);
    assert_eq!(doc["max_degree"], 4);
    let doc = json(&noble(&["oracle", &path("b2.cay"), "--max-degree", "4"]));
    assert_eq!(doc["degree"], 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["nobility", "i2.cay"],
        vec!["nobility", "s3.cay"],
        vec!["filters", "i2.cay"],
        vec!["analyze", "b2.gen"],
        vec!["embed-wp", "i2.cay"],
    ] {
        let full: Vec<String> = [args[0].to_string(), path(args[1])].into();
        let argv: Vec<&str> = full.iter().map(String::as_str).collect();
        let first = noble(&argv);
        assert!(first.status.success());
        assert_eq!(first.stdout, noble(&argv).stdout);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(noble(&["validate", &path("truncated.cay")]).status.code(), Some(2));
    let bad = noble(&["validate", &path("left_zero.cay")]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("two inverses"));
    assert!(bad.stdout.is_empty());
    assert_eq!(noble(&["oracle", &path("e3.cay"), "--max-degree", "9"]).status.code(), Some(4));
    assert_eq!(noble(&["represent", &path("i2.cay"), "--H", "1,2"]).status.code(), Some(3));
}

#[test]
fn represent_then_verify() {
    let out = noble(&["represent", &path("i2.cay"), "--H", "1,5", "--family", "magnitude"]);
    let doc = json(&out);
    assert_eq!(doc["family"].as_array().unwrap().len(), 4);
    assert_eq!(doc["flags"]["is_transitive"], "verified-false");
    let file = std::env::temp_dir().join(format!("noble-rep-{}.json", std::process::id()));
    std::fs::write(&file, &out.stdout).unwrap();
    let flags = json(&noble(&["verify", &path("i2.cay"), "--rep", &file.to_string_lossy()]));
    std::fs::remove_file(&file).unwrap();
    assert_eq!(flags, doc["flags"]);
}

#[test]
fn generator_files_are_closed() {
    let doc = json(&noble(&["validate", &path("b2.gen")]));
    assert_eq!(doc["order"], 5);
    let wp = noble(&["embed-wp", &path("b2.cay")]);
    assert!(String::from_utf8_lossy(&wp.stdout).starts_with("points 5\n"));
}

#[test]
fn text_format() {
    let out = noble(&["nobility", &path("e3.cay"), "--format", "text"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("verdict not_noble\n"));
}
