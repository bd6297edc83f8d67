use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn kissing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kissing")).args(args).env_remove("KISSING_DATA_DIR").output().unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let out = kissing(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kissing-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn shell_counts_and_vectors() {
    let v = json_ok(&["shell", "--lattice", "thm1_hex", "--hi2", "12"]);
    assert_eq!(v["total"], 12);
    assert_eq!(v["histogram"]["4"], 6);
    assert_eq!(v["histogram"]["12"], 6);
    assert!(v.get("vectors").is_none());

    let v = json_ok(&["shell", "--lattice", "D4:2", "--lo2", "0", "--hi2", "4", "--collect", "--pairs"]);
    assert_eq!(v["total"], 24);
    assert_eq!(v["vectors"].as_array().unwrap().len(), 12);
    assert_eq!(v["vectors"][0]["norm2"], "4");
}

#[test]
fn shell_reads_lattice_files() {
    let dir = scratch_dir("file");
    let path = dir.join("square.json");
    std::fs::write(&path, r#"{"name": "square", "dim": 2, "gram": [["4", "0"], ["0", "4"]]}"#).unwrap();
    let v = json_ok(&["shell", "--lattice", path.to_str().unwrap(), "--hi2", "8"]);
    assert_eq!(v["total"], 8);
}

#[test]
fn data_dir_overrides_shipped_lattices() {
    let dir = scratch_dir("override");
    std::fs::create_dir_all(dir.join("lattices")).unwrap();
    std::fs::write(
        dir.join("lattices/thm1_hex.json"),
        r#"{"name": "thm1_hex", "dim": 2, "gram": [["4", "0"], ["0", "4"]]}"#,
    )
    .unwrap();
    let v = json_ok(&["--data-dir", dir.to_str().unwrap(), "shell", "--lattice", "thm1_hex", "--hi2", "4"]);
    assert_eq!(v["total"], 4);
    let out = Command::new(env!("CARGO_BIN_EXE_kissing"))
        .args(["shell", "--lattice", "thm1_hex", "--hi2", "4"])
        .env("KISSING_DATA_DIR", &dir)
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total"], 4);
}

#[test]
fn oversized_enumeration_is_refused() {
    let out = kissing(&["shell", "--lattice", "Leech", "--hi2", "8", "--budget", "1000000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("refusing"));
}

#[test]
fn classes_and_triples() {
    let v = json_ok(&["classes", "--lattice", "E8:2", "--hi2", "8"]);
    assert_eq!(v["profile"]["1"], 120);
    assert_eq!(v["profile"]["8"], 135);
    assert_eq!(v["equivalence_violations"], 0);
    assert_eq!(v["classes"].as_array().unwrap().len(), 255);

    let v = json_ok(&["triples", "--lattice", "E8:2", "--hi2", "8", "--kappa-prev", "126"]);
    assert_eq!(v["midpoint_triples"], 15120);
    assert_eq!(v["double_count"]["tight"], true);
    assert_eq!(v["collinear_lines"].as_array().unwrap().len(), 0);

    let v = json_ok(&["triples", "--lattice", "thm1_hex", "--hi2", "12"]);
    assert_eq!(v["collinear_lines"].as_array().unwrap().len(), 6);
}

#[test]
fn profile_system() {
    let v = json_ok(&["profile-system", "--n", "8", "--kappa-prev", "126", "--target", "2400"]);
    assert_eq!(v["count"], 1);
    assert_eq!(v["solutions"][0]["1"], 120);
    assert_eq!(v["solutions"][0]["8"], 135);
    let v = json_ok(&[
        "profile-system", "--n", "4", "--kappa-prev", "10", "--budget", "15", "--target", "52", "--fixed-zero", "3,4",
    ]);
    assert_eq!(v["count"], 0);
}

#[test]
fn theta() {
    let v = json_ok(&["theta", "--lattice", "Leech", "--k", "2"]);
    assert_eq!(v["count"], "196560");
    let v = json_ok(&["theta", "--lattice", "E8", "--k-max", "3"]);
    assert_eq!(v["coefficients"], serde_json::json!(["1", "240", "2160", "6720"]));
}

#[test]
fn polytopes() {
    let v = json_ok(&["polytope", "--body", "P_tri", "--verdict"]);
    assert_eq!(v["verdict"], "kissing12");
    assert!(v["ratio"].as_str().unwrap().starts_with("1.0929"));
    assert_eq!(v["ratio"].as_str().unwrap().trim_start_matches("1.").len(), 16);

    let out = kissing(&["polytope", "--body", "P_sd", "--verdict"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_ok(&["polytope", "--body", "P_sd", "--verdict", "--allow-asymmetric"]);
    assert_eq!(v["verdict"], "kissing12");
    assert_eq!(v["symmetric"], false);

    let v = json_ok(&["polytope", "--body", "cube", "--verdict"]);
    assert_eq!(v["verdict"], "inconclusive");
    let v = json_ok(&["polytope", "--lp", "2.5"]);
    assert_eq!(v["verdict"], "kissing12");
    let v = json_ok(&["polytope", "--lp-boundary"]);
    assert_eq!(v["boundary_count"], 14);
}

#[test]
fn catalog_list() {
    let v = json_ok(&["catalog", "list"]);
    let lattices: Vec<&str> = v["lattices"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(lattices.contains(&"Leech") && lattices.contains(&"thm3_opt50"));
    assert!(v["polytopes"].as_array().unwrap().iter().any(|x| x == "P_sd"));
}

#[test]
fn verify_exit_codes() {
    let v = json_ok(&["verify", "theorem2"]);
    assert_eq!(v["pass"], true);
    assert_eq!(kissing(&["verify", "theorem99"]).status.code(), Some(2));

    let dir = scratch_dir("claims");
    std::fs::write(
        dir.join("claims.json"),
        r#"{"theorem1": {"title": "wrong on purpose", "checks": [
            {"kind": "shell_count", "lattice": "thm1_hex", "hi2": "4", "expected": 7}]}}"#,
    )
    .unwrap();
    let out = kissing(&["--data-dir", dir.to_str().unwrap(), "verify", "theorem1"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["claims"][0]["checks"][0]["status"], "fail");
}

#[test]
fn verify_all_and_report() {
    let v = json_ok(&["verify", "all"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["claims"].as_array().unwrap().len(), 11);

    let a = kissing(&["report", "--format", "json"]);
    let b = kissing(&["report", "--format", "json", "--threads", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let md = kissing(&["report", "--format", "markdown"]);
    assert!(md.status.success());
    assert!(String::from_utf8_lossy(&md.stdout).contains("| 8 | ≤510 | =2400 |"));
}
