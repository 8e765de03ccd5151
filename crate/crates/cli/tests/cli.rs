use std::process::{Command, Output};

use serde_json::Value;

fn richrt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_richrt")).args(args).env("RICHRT_THREADS", "1").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = richrt(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn generate_text() {
    let out = richrt(&["generate", "--word", "z", "--length", "19", "--text"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "0010110100101101002");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(richrt(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(richrt(&["search", "--power-free", "x/y"]).status.code(), Some(1));
    assert_eq!(richrt(&["search", "--preset", "nope"]).status.code(), Some(1));
    assert_eq!(richrt(&["--help"]).status.code(), Some(0));
}

#[test]
fn preset_search_certificate() {
    let c = json(&["search", "--preset", "f1_over_12"]);
    assert_eq!(c["status"], "ok");
    assert_eq!(c["results"]["length"], 4);
    assert_eq!(c["results"]["exhausted"], true);
    assert_eq!(c["provenance"]["threads"], 1);
}

#[test]
fn custom_search_with_forbidden_file() {
    let dir = std::env::temp_dir().join(format!("richrt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("forbid.txt");
    std::fs::write(&path, "# two squares\n00\n11\n").unwrap();
    let c = json(&["search", "--alphabet", "2", "--forbid", path.to_str().unwrap(), "--power-free", "3"]);
    assert_eq!(c["results"]["witness"], "01010");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn ce_reports_limit_and_discrepancies() {
    let c = json(&["ce", "--steps", "4", "--scan-length", "20000", "--bound-n", "40"]);
    assert_eq!(c["status"], "ok");
    let limit = c["results"]["limit"].as_f64().unwrap();
    assert!((limit - 2.25876324).abs() < 1e-8);
    let notes: Vec<&str> = c["discrepancies"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(notes.iter().any(|n| n.contains("96/43") && n.contains("94/43")));
    assert!(notes.iter().any(|n| n.contains("x^3 - 2x^2 - 1")));
    let terms = &c["results"]["sequences"][0]["terms"];
    assert_eq!(terms[3]["direct"], "467/207");
}

#[test]
fn results_are_deterministic() {
    let strip = |mut v: Value| {
        v["provenance"]["wall_time_ms"] = Value::Null;
        v
    };
    let a = strip(json(&["search", "--preset", "no_00"]));
    let b = strip(json(&["--threads", "0", "search", "--preset", "no_00"]));
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a, strip(json(&["search", "--preset", "no_00"])));
}

#[test]
fn complexity_tsv() {
    let path = std::env::temp_dir().join(format!("richrt-cx-{}.tsv", std::process::id()));
    let c = json(&["complexity", "--word", "z", "--kind", "factor", "--max-n", "10", "--tsv", path.to_str().unwrap()]);
    assert_eq!(c["results"]["closed_form_holds"], true);
    let tsv = std::fs::read_to_string(&path).unwrap();
    assert!(tsv.lines().any(|l| l == "10\t42"));
    std::fs::remove_file(path).ok();
}

#[test]
fn forbidden_and_palindromes() {
    let c = json(&["verify-forbidden", "--family", "1", "--no-trees"]);
    assert_eq!(c["status"], "ok");
    let c = json(&["palindromes", "--word", "y", "--length", "5000"]);
    assert_eq!(c["results"]["rich"], true);
    assert_eq!(c["results"]["distinct_palindromes"], 5001);
}
