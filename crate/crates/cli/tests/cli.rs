//! End-to-end checks of the binary's surface: output formats, exit
//! codes, and the determinism of the claim report.

use std::process::{Command, Output};

fn relmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relmt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

#[test]
fn eval_the_witness_at_two() {
    let out = relmt(&[
        "eval",
        "--model",
        "thm3-N",
        "--world",
        "s",
        "--formula",
        "~(exists x. x < y) & ((forall x. x = x) -> exists x. y < x)",
        "--assign",
        "y=2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "true");

    let out = relmt(&[
        "eval",
        "--model",
        "thm3-N",
        "--world",
        "s",
        "--formula",
        "~(exists x. x < y) & ((forall x. x = x) -> exists x. y < x)",
        "--assign",
        "y=5/2",
    ]);
    assert_eq!(stdout(&out).trim(), "false");
}

#[test]
fn normalize_negated_identity() {
    let out = relmt(&["normalize", "--formula", "~(x=x)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x < x");
}

#[test]
fn check_frame_reports_the_ci_violation() {
    let out = relmt(&["check-frame", "--model", "thm3-N"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("b1: satisfied"));
    assert!(text.contains("CI: VIOLATED at (s,t,s)"));
    assert!(text.contains("labels: B"));
}

#[test]
fn check_theory_on_the_fixture() {
    let out = relmt(&["check-theory", "--model", "thm3-N", "--theory", "DLO", "--schema-bound", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("all axioms hold at s"));
}

#[test]
fn search_finds_nothing_for_dlo() {
    let out = relmt(&[
        "search",
        "--theory",
        "DLO",
        "--max-domain",
        "3",
        "--max-worlds",
        "2",
        "--conditions",
        "b1,b2,b3,b4",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "no model found");
}

#[test]
fn search_finds_the_variant_model() {
    let out = relmt(&[
        "search",
        "--theory",
        "DLO-NEG",
        "--max-domain",
        "1",
        "--max-worlds",
        "2",
        "--conditions",
        "b1,b2,b3,b4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"worlds\""), "expected model JSON, got: {}", text);
}

#[test]
fn qe_subcommand_eliminates_and_verifies() {
    let out = relmt(&[
        "qe",
        "--model",
        "bk-serial-DLO",
        "--formula",
        "exists z. x1 < z & z < x2",
        "--verify",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("x1 < x2"));
    assert!(text.contains("equivalence: pass"));
    assert!(text.contains("interdeducibility: pass"));
}

#[test]
fn fixtures_list_and_dump() {
    let out = relmt(&["fixtures", "list"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("thm3-N"));

    let out = relmt(&["fixtures", "dump", "thm3-N"]);
    assert!(out.status.success());
    let json = stdout(&out);
    let model = relmt_core::models::Model::from_json_str(&json).unwrap();
    assert_eq!(model.frame().triple_count(), 7);
}

#[test]
fn dumped_fixture_loads_back_through_a_file() {
    let out = relmt(&["fixtures", "dump", "rcf-demo"]);
    let dir = std::env::temp_dir().join("relmt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rcf-demo.json");
    std::fs::write(&path, stdout(&out)).unwrap();
    let out = relmt(&[
        "eval",
        "--model",
        path.to_str().unwrap(),
        "--world",
        "s",
        "--formula",
        "exists y, z. (x < y) & (y < z) & ~(y < z)",
        "--assign",
        "x=0",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "true");
}

#[test]
fn reproduce_is_byte_deterministic_and_exits_zero() {
    let a = relmt(&["reproduce", "--json"]);
    let b = relmt(&["reproduce", "--json"]);
    assert!(a.status.success());
    assert!(b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(json["claims"].as_array().unwrap().len() >= 20);
}

#[test]
fn reproduce_text_flags_the_known_mismatches() {
    let out = relmt(&["reproduce"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("MISMATCH thm3-rm-profile"));
    assert!(text.contains("MISMATCH omegacat-N-conjunction"));
    assert!(text.contains("MATCH    thm3-definable-set"));
}

#[test]
fn usage_errors_exit_two() {
    let out = relmt(&["eval", "--world", "s"]);
    assert_eq!(out.status.code(), Some(2));
    let out = relmt(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_inputs_exit_one() {
    let out = relmt(&["eval", "--model", "no-such-fixture", "--world", "s", "--formula", "top"]);
    assert_eq!(out.status.code(), Some(1));
    let out = relmt(&["normalize", "--formula", "x < y"]);
    assert_eq!(out.status.code(), Some(1));
    let out = relmt(&["check-frame", "--model", "thm3-N", "--condition", "b9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn definable_set_subcommand() {
    let out = relmt(&[
        "definable-set",
        "--model",
        "thm3-N",
        "--formula",
        "~(exists x. x < y) & ((forall x. x = x) -> exists x. y < x)",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("{2} (representative 2): true"));
    assert!(text.contains("(2, 3) (representative 5/2): false"));
}
