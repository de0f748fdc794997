use std::process::{Command, Output};
use std::sync::Arc;

use nscas::cli::checks::{check_ids, run_all, run_all_with, run_check, CheckConfig};
use nscas::cli::parser::{parse_element, parse_scalar};
use nscas::cli::report::{Status, ValueKind};
use nscas::{rat, NeveuSchwarz};

fn nscas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nscas"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn nf_prints_ordered_form() {
    let o = nscas(&["nf", "L[-1]*L[-2]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "L[-2]*L[-1] - L[-3]");
}

#[test]
fn nf_with_trailing_modes_prints_quotient() {
    let o = nscas(&["nf", "L[-1]*G[-1/2]*(1/2*L[1]*G[1/2] - G[3/2])", "--trailing", "L[-1],G[-1/2]"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("quotient: 2*L[0]^2 - 3*L[0]"), "{}", stdout(&o));
}

#[test]
fn bracket_command() {
    let o = nscas(&["bracket", "G[3/2]", "G[-3/2]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2*L[0] + 2/3*chat");
}

#[test]
fn parse_errors_exit_with_usage_code() {
    assert_eq!(nscas(&["nf", "L[1/2]"]).status.code(), Some(2));
    assert_eq!(nscas(&["nf", "L[0] +"]).status.code(), Some(2));
    assert_eq!(nscas(&["verify", "--check", "no.such.check"]).status.code(), Some(2));
    assert_eq!(nscas(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_single_check_json() {
    let o = nscas(&["verify", "--check", "lemma3.congruence", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["id"], "lemma3.congruence");
    assert_eq!(v["status"], "pass");
    assert!(v["machine"].as_array().unwrap().iter().any(|m| m["value"] == "2*L[0]^2 - 3*L[0]"));
}

#[test]
fn failing_check_exits_with_one() {
    let o = nscas(&["verify", "--all", "--json"]);
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), check_ids().len());
    let any_fail = lines.iter().any(|l| !l.contains("\"status\":\"pass\""));
    assert_eq!(o.status.code(), Some(if any_fail { 1 } else { 0 }));
}

#[test]
fn act_on_rule_file() {
    let o = nscas(&["act", "G[1/2]", "--rules", "rules/n.rules", "--state", "z"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!stdout(&o).trim().is_empty());
}

#[test]
fn verma_dims_command() {
    let o = nscas(&["verma", "--level-max", "4", "--dims"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[1, 1, 1, 2, 3, 4, 5, 7, 10]");
}

#[test]
fn run_all_follows_registry_order() {
    let ids: Vec<String> = run_all().into_iter().map(|r| r.id).collect();
    assert_eq!(ids, check_ids());
}

#[test]
fn machine_values_reparse_to_the_same_text() {
    for r in run_all() {
        for m in &r.machine {
            let again = match m.kind {
                ValueKind::Scalar => parse_scalar(&m.value).map(|s| s.to_string()),
                ValueKind::Element | ValueKind::State => parse_element(&m.value).map(|e| e.to_string()),
            };
            assert_eq!(again.as_deref(), Ok(m.value.as_str()), "{} / {}", r.id, m.label);
        }
    }
}

#[test]
fn corrupted_table_is_caught() {
    let config = CheckConfig {
        table: Arc::new(NeveuSchwarz {
            odd_const: rat(1, 12),
            ..NeveuSchwarz::default()
        }),
        ..CheckConfig::default()
    };
    let reports = run_all_with(&config);
    assert!(reports.iter().any(|r| r.status != Status::Pass));
    assert_ne!(run_check("jacobi.sweep").unwrap().status, Status::Fail);
    let jac = reports.iter().find(|r| r.id == "jacobi.sweep").unwrap();
    assert_eq!(jac.status, Status::Fail);
}
