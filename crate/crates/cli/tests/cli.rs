use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sizebound"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn family_prints_exact_certificate() {
    let o = run(&["family", "--spec", "S:7:3", "--rho"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("3.000000000000000"));
    assert!(lines.next().unwrap().starts_with("exact: rho = sqrt(9)"));
}

#[test]
fn rho_of_star_from_stdin() {
    let g6 = stdout(&run(&["family", "--spec", "star:9"]));
    let mut child = bin().arg("rho").stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(g6.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("rho 3.000000000000000\n"));
}

#[test]
fn verify_pass_report() {
    let o = run(&["verify", "--theorem", "T1.4C5", "--m", "8..11", "--mode", "exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    sizebound::verify::validate_report(&v).unwrap();
    assert_eq!(v["status"], "PASS");
    let eq = v["equality_cases"].as_array().unwrap();
    assert_eq!(eq.len(), 2);
    assert!(eq.iter().all(|e| e["family"].as_str().unwrap().starts_with('B')));
}

#[test]
fn scan_findings_exit_two() {
    let o = run(&["scan", "--conjecture", "6.2", "--r", "1", "--m", "6..9"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["status"], "FAIL");
}

#[test]
fn refusal_exit_three() {
    let o = run(&["verify", "--theorem", "T1.2", "--m", "10..20"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["bogus"]).status.code(), Some(64));
    assert_eq!(run(&["rho", "--nope"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn every_subcommand_has_help() {
    for cmd in ["family", "rho", "certify", "enum", "search", "verify", "scan", "witness", "audit"] {
        let o = run(&[cmd, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        assert!(stdout(&o).lines().next().unwrap().len() > 10, "{cmd}");
    }
}

#[test]
fn enum_sorted_and_written_to_file() {
    let dir = std::env::temp_dir().join(format!("sizebound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c4free.g6");
    let o = run(&["enum", "--edges", "6", "--forbid", "C4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let mut sorted = lines.clone();
    sorted.sort();
    assert_eq!(lines, sorted);
    assert!(!lines.is_empty());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn search_is_reproducible() {
    let args = ["search", "--edges", "9", "--forbid", "C5", "--restarts", "30", "--seed", "7"];
    let a = run(&args);
    let b = run(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(stdout(&a).trim()).unwrap();
    assert!((v["rho"].as_f64().unwrap() - (1.0 + 33f64.sqrt()) / 2.0).abs() < 1e-9);
}

#[test]
fn certify_and_witness() {
    let k4 = stdout(&run(&["family", "--spec", "complete:4"])).trim().to_string();
    let o = run(&["certify", "--g6", &k4, "--quadratic", "3,0", "--threshold", "pancyclic:1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("divides=") && out.contains("above"), "{out}");
    let o = run(&["witness", "--g6", &k4, "--k", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["cycles"]["4"].as_array().unwrap().len(), 4);
}

#[test]
fn audit_book() {
    let book = stdout(&run(&["family", "--spec", "split:6:2"])).trim().to_string();
    let o = run(&["audit", "--g6", &book, "--forbid", "C5", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
