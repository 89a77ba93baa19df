use std::process::{Command, Output};

use serde_json::Value;

fn qdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdyn"))
        .args(args)
        .output()
        .expect("spawn qdyn")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = qdyn(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn fixed_points_worked_example() {
    let doc = json(&["fixed-points", "--algebra", "quat:-1,-1@Q", "--poly", "x^2+(i+1)*x+1+i*j"]);
    assert_eq!(doc["command"], "fixed-points");
    assert_eq!(doc["companion"], "x^4 + 3*x^2 + 2");
    let points: Vec<&str> = doc["result"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["point"].as_str().unwrap())
        .collect();
    assert_eq!(points, ["-j", "-i - j"]);
    assert_eq!(doc["result"][0]["class"]["T"], "0");
    assert_eq!(doc["result"][1]["class"]["N"], "2");
    assert_eq!(doc["result"][1]["coordinates"], serde_json::json!(["0", "-1", "-1", "0"]));
}

#[test]
fn compose_text_and_json() {
    let out = qdyn(&["compose", "--poly", "i*x^2", "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "(-i)*x^4");
    let doc = json(&["compose", "--poly", "i*x^2", "--n", "2"]);
    assert_eq!(doc["result"]["poly"], "(-i)*x^4");
    assert_eq!(doc["result"]["degree"], 4);
}

#[test]
fn identity_orbit_is_constant() {
    let doc = json(&["orbit", "--poly", "x", "--point", "j", "--n-max", "3"]);
    let s = doc.to_string();
    assert!(s.contains(r#"["j","j","j"]"#), "{s}");
}

#[test]
fn check_periodic_verdicts() {
    let doc = json(&["check-periodic", "--poly", "x^2 + i", "--point", "-i", "--r", "2", "--n-max", "4"]);
    assert_eq!(doc["verdicts"]["status"], "certified-periodic");
    assert_eq!(doc["evidence"]["r_fixed"], true);

    let doc = json(&[
        "check-periodic",
        "--algebra",
        "quat:-1,-1@Q(s5)",
        "--poly",
        "x^2 + (i+1)*x + 1 + i*j",
        "--point",
        "-1 + (133/362*s5 - 333/362)*i - (14/181*s5 + 165/181)*j - (26/181*s5 + 22/181)*i*j",
        "--r",
        "2",
        "--n-max",
        "2",
    ]);
    assert_eq!(doc["verdicts"]["status"], "refuted-at(2)");
    assert_eq!(doc["verdicts"]["refuted_at"], 2);
    assert_eq!(doc["evidence"]["r_fixed"], true);
    assert_eq!(doc["evidence"]["commutation_failure_t"], 1);
}

#[test]
fn oct_check_reports_first_failure() {
    let args = ["oct-check", "--poly", "l*x^2 + (1 - i*l)*x + l - (i*j)*l", "--point", "j", "--n-max", "3"];
    let doc = json(&args);
    assert_eq!(doc["result"]["fixed"], true);
    assert_eq!(doc["result"]["first_failure"], 2);
    let text = stdout(&qdyn(&args));
    assert!(text.contains("f∘2(p) = 4*i + j"), "{text}");
}

#[test]
fn numeric_roots_carry_approx_marker() {
    let doc = json(&["roots", "--poly", "x^2 + i*x + 1", "--mode", "numeric"]);
    assert_eq!(doc["companion"], "x^4 + 3*x^2 + 1");
    let sols = doc["result"].as_array().unwrap();
    assert_eq!(sols.len(), 2);
    for s in sols {
        assert_eq!(s["variant"], "point");
        assert_eq!(s["approx"], true);
        assert!(s["residual"].as_f64().unwrap() <= 1e-9);
    }
}

#[test]
fn exact_roots_report_unfactored_remainder() {
    let doc = json(&["roots", "--poly", "x^2 + i*x + 1"]);
    assert_eq!(doc["residual_factor"], "x^4 + 3*x^2 + 1");
    assert_eq!(doc["result"], serde_json::json!([]));
}

#[test]
fn companion_command() {
    let out = qdyn(&["companion", "--poly", "x - i"]);
    assert_eq!(stdout(&out).trim(), "x^2 + 1");
}

#[test]
fn exit_codes() {
    // math errors
    assert_eq!(qdyn(&["compose", "--poly", "x^3", "--n", "40"]).status.code(), Some(1));
    assert_eq!(
        qdyn(&["roots", "--algebra", "quat:-1,-1@Q(s5)", "--poly", "x^2 + s5"]).status.code(),
        Some(1)
    );
    // usage and parse errors
    assert_eq!(qdyn(&["roots", "--poly", "x + l"]).status.code(), Some(2));
    assert_eq!(qdyn(&["roots", "--poly", "x + "]).status.code(), Some(2));
    assert_eq!(qdyn(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qdyn(&["roots", "--algebra", "quat:-1@Q", "--poly", "x"]).status.code(), Some(2));
    let out = qdyn(&["roots", "--poly", "x + l"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown symbol"));
}

#[test]
fn json_is_byte_stable() {
    let args = ["--json", "fixed-points", "--poly", "x^2+(i+1)*x+1+i*j"];
    let a = qdyn(&args).stdout;
    let b = qdyn(&args).stdout;
    assert_eq!(a, b);
    let args = ["--json", "roots", "--poly", "x^2 + i*x + 1", "--mode", "numeric"];
    assert_eq!(qdyn(&args).stdout, qdyn(&args).stdout);
}
