use operad_core::algebraside::{format_tensors, sample_corpus};
use operad_core::cli::run;
use std::process::Command;

fn cli(args: &[&str]) -> operad_core::cli::Output {
    run(std::iter::once("operad").chain(args.iter().copied()))
}

fn tmp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("operad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn dims_table() {
    let o = cli(&["dims", "LP", "--inputs", "3"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.lines().any(|l| l == "LP(2,1;o)=2"), "{}", o.stdout);
    assert!(o.stdout.lines().any(|l| l == "LP(3,0;c)=2"));
    let j: serde_json::Value = serde_json::from_str(&cli(&["dims", "LP", "--inputs", "2", "--json"]).stdout).unwrap();
    assert_eq!(j["model"], "LP");
}

#[test]
fn d2_of_models() {
    let o = cli(&["d2", "OCinf", "--inputs", "5"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("OK: 0 violations"), "{}", o.stdout);
    let o = cli(&["d2", "LP"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("no differential"));
}

#[test]
fn broken_differential_from_file() {
    let f = tmp("bad_dg.spec", "generator m (o,o) -> o degree 0\ngenerator u (c) -> o degree -1 symmetry trivial\ngenerator a (c,o) -> o degree 0\ngenerator b (c,o) -> o degree 1\ndifferential b = a(c1,o1)\ndifferential a = m(u(c1),o1)\n");
    let o = cli(&["d2", &f, "--inputs", "2"]);
    assert_eq!(o.code, 1, "{}{}", o.stdout, o.stderr);
    assert!(o.stdout.starts_with("FAIL"));
}

#[test]
fn homology_and_gk() {
    let o = cli(&["homology", "H0SCdual", "--inputs", "3"]);
    assert!(o.stdout.lines().any(|l| l == "H0SCdual(2,0;o) {-2:1, -1:1}"), "{}", o.stdout);
    let o = cli(&["gk", "H0SCvor", "--order", "6"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("OK through t^6"));
}

#[test]
fn span_dual_and_ql() {
    let o = cli(&["span", "LP", "--sig", "2,1,o", "--weight", "2"]);
    assert!(o.stdout.starts_with("LP(2,1;o) weight 2: span 1 of 3"), "{}", o.stdout);
    let o = cli(&["dual", "H0SCvor"]);
    assert!(o.stdout.contains("# (2,1;o) free 3 span 2 perp 1"), "{}", o.stdout);
    assert!(operad_core::specfile::parse(&o.stdout).is_ok());
    let f = tmp("h0sc.spec", &cli(&["show", "H0SC"]).stdout);
    let o = cli(&["ql-check", &f]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("ql1: OK") && o.stdout.contains("ql2: OK"));
}

#[test]
fn parse_errors_and_bad_flags() {
    let f = tmp("broken.spec", "operad B\ngenerator m (o,o) -> o\nrelation m(m(o1,o2),o3\n");
    let o = cli(&["dims", &f]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 3, column"), "{}", o.stderr);
    assert_eq!(cli(&["dims", "LP", "--frobnicate"]).code, 2);
    assert_eq!(cli(&["verify-paper", "--only", "nope"]).code, 2);
    assert!(cli(&["dims", "Unknown"]).stderr.contains("H0SCvor"));
}

#[test]
fn shlp_files() {
    let corpus = sample_corpus(7);
    let (_, good, _) = corpus.iter().find(|c| c.2).unwrap();
    let (_, bad, _) = corpus.iter().find(|c| !c.2).unwrap();
    let o = cli(&["shlp-check", &tmp("good.tensors", &format_tensors(good)), "-N", "3"]);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    assert!(o.stdout.starts_with("OK: 0 violations"));
    let o = cli(&["shlp-check", &tmp("bad.tensors", &format_tensors(bad)), "-N", "3"]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.starts_with("FAIL"));
}

#[test]
fn binary_verify_selection_json() {
    let out = Command::new(env!("CARGO_BIN_EXE_operad")).args(["verify-paper", "--only", "duality", "--json"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    assert_eq!(v["checks"][0]["status"], "pass");
}
