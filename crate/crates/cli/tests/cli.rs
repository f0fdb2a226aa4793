use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use signrule::Isolation;

fn signrule(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_signrule"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = signrule(&full);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn sc_example() {
    let o = signrule(&["sc", "6", "-11", "6", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn lemma_verify_example() {
    let o = signrule(&["lemma-verify", "--c", "1", "--m", "1", "1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn lemma_verify_trace() {
    let o = signrule(&[
        "lemma-verify",
        "--c",
        "1/2",
        "--m",
        "2",
        "--trace",
        "1",
        "0",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    let delta: i64 = lines.next().unwrap().parse().unwrap();
    assert!(delta >= 0 && delta % 2 == 0);
    assert_eq!(text.matches("row=base").count(), 2);
    assert!(text.contains("factor 1:") && text.contains("factor 2:"));
}

#[test]
fn table_check_example() {
    let o = signrule(&["table-check"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "8 rows, 0 mismatches\n");
}

#[test]
fn bad_token_is_named() {
    let o = signrule(&["sc", "1", "oops", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("\"oops\""));

    let o = signrule(&["pz", "1/0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1/0"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(signrule(&[]).status.code(), Some(2));
    assert_eq!(signrule(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        signrule(&["lemma-verify", "--m", "1", "1"]).status.code(),
        Some(2)
    );
    // preconditions
    assert_eq!(signrule(&["pz"]).status.code(), Some(2));
    assert_eq!(signrule(&["isolate", "5"]).status.code(), Some(2));
    assert_eq!(
        signrule(&["lemma-verify", "--c", "-1", "--m", "1", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        signrule(&["lemma-verify", "--c", "1", "--m", "0", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        signrule(&["sc", "1", "2", "--descending"]).status.code(),
        Some(2)
    );
}

#[test]
fn negative_rational_coefficients() {
    let o = signrule(&["pz", "-1/2", "0", "1"]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn descending_flag_flips_order() {
    let asc = signrule(&["isolate", "6", "-11", "6", "-1"]);
    let desc = signrule(&["--descending", "isolate", "-1", "6", "-11", "6"]);
    assert_eq!(stdout(&asc), stdout(&desc));
    assert_eq!(
        stdout(&asc),
        "exact 1 mult 1\nexact 2 mult 1\nexact 3 mult 1\n"
    );
}

#[test]
fn coefficients_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_signrule"))
        .args(["pz", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"2 -5\n4 -1\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn bound_reports_parity() {
    let o = signrule(&["bound", "1", "-1", "1"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("2"));
    assert!(text.contains("even") && text.contains("0, 2"));
    let v = json(&["bound", "6", "-11", "6", "-1"]);
    assert_eq!(v["bound"], 3);
    assert_eq!(v["parity"], "odd");
    assert_eq!(v["possible_pz"], serde_json::json!([1, 3]));
}

#[test]
fn json_schemas() {
    assert_eq!(json(&["sc", "6", "-11", "6", "-1"])["sc"], 3);
    assert_eq!(json(&["pz", "2", "-5", "4", "-1"])["pz"], 3);

    let v = json(&["isolate", "-2", "0", "1"]);
    let iso: Isolation = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&iso).unwrap(), v);
    let root = &v["roots"][0];
    assert_eq!(root["kind"], "open");
    assert_eq!(root["multiplicity"], 1);
    assert!(root["lo"].is_string() && root["hi"].is_string());

    let v = json(&["lemma-verify", "--c", "2", "--m", "2", "--trace", "1"]);
    assert_eq!(v["delta"], 0);
    assert_eq!(v["f"], serde_json::json!(["4", "-4", "1"]));
    assert_eq!(v["traces"].as_array().unwrap().len(), 2);
    assert_eq!(v["traces"][1]["steps"][0]["case"]["row"], "viii");

    let v = json(&["table-check"]);
    assert_eq!(v["rows"], 8);
    assert_eq!(v["mismatches"], 0);
    assert_eq!(v["observed"]["vi"], serde_json::json!([[2, 0]]));

    let v = json(&["fuzz", "--trials", "20", "--seed", "9"]);
    assert_eq!(v["report"]["trials"], 20);
    assert_eq!(v["report"]["violations"], serde_json::json!([]));
}

#[test]
fn fuzz_is_deterministic() {
    let args = [
        "fuzz",
        "--trials",
        "150",
        "--seed",
        "42",
        "--max-degree",
        "6",
    ];
    let a = signrule(&args);
    let b = signrule(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), "150 trials, 600 checks, 0 violations\n");
}

#[test]
fn in_process_run_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = signrule_cli::run(
        ["signrule", "sc", "1", "0", "-2", "3"],
        &mut std::io::empty(),
        &mut out,
        &mut err,
    );
    assert_eq!(code, 0);
    assert_eq!(out, b"2\n");
}
