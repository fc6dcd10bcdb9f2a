//! End-to-end CLI tests: every command is a thin adapter, so its output is
//! compared against direct library calls, and the exit codes are pinned.

use std::path::PathBuf;
use std::process::{Command, Output};

use newtondiag::diagram::NewtonDiagram;
use newtondiag::oracle;
use newtondiag::whitney::{self, Chooser};
use newtondiag::Poly;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_newtondiag"))
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 output")
}

fn data(file: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.push("tests");
    path.push("data");
    path.push(file);
    path.display().to_string()
}

#[test]
fn check_reports_membership_and_bound() {
    let output = run(&["check", "x^3 + 3*x*y + y^3", "--dim", "2"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("in_H: true"));
    assert!(text.contains("degree: 3"));
    assert!(text.contains("terms: 3"));
    assert!(text.contains("bound: 3"));
    assert!(text.contains("tight: true"));
}

#[test]
fn check_rejects_non_members_with_exit_one() {
    let output = run(&["check", "x^2", "--dim", "2"]);
    assert_eq!(output.status.code(), Some(1));
    let text = stdout(&output);
    assert!(text.contains("in_H: false"));
    assert!(text.contains("witness"));
}

#[test]
fn check_reports_parse_errors_with_position() {
    let output = run(&["check", "x1 + ^2", "--dim", "2"]);
    assert_eq!(output.status.code(), Some(1));
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(err.contains("position 5"), "missing position in: {err}");
}

#[test]
fn quotient_matches_library_division() {
    let output = run(&["quotient", "x^3 + 3*x*y + y^3", "--dim", "2", "--json"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let division = Poly::parse("x^3 + 3*x*y + y^3", 2)
        .unwrap()
        .divide_by_hyperplane();
    assert_eq!(value["schema"], 1);
    assert_eq!(value["verdicts"]["quotient"], division.quotient.to_string());
    assert_eq!(value["verdicts"]["remainder"], "0");
    assert_eq!(value["verdicts"]["exact"], true);
}

#[test]
fn diagram_json_equals_library_dump() {
    let output = run(&[
        "diagram",
        "--file",
        &data("substituted_cubic.poly"),
        "--dim",
        "3",
        "--json",
    ]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let p = Poly::parse(
        &std::fs::read_to_string(data("substituted_cubic.poly")).unwrap().trim(),
        3,
    )
    .unwrap();
    let dump = NewtonDiagram::from_quotient(&p.divide_by_hyperplane().quotient).dump();
    assert_eq!(value["verdicts"], serde_json::to_value(&dump).unwrap());
}

#[test]
fn diagram_requires_divisibility_without_of_quotient() {
    let output = run(&["diagram", "x^2", "--dim", "2"]);
    assert_eq!(output.status.code(), Some(1));
    let output = run(&["diagram", "x^2", "--dim", "2", "--of-quotient"]);
    assert!(output.status.success());
}

#[test]
fn view_json_matches_library_view() {
    let output = run(&[
        "view",
        "--dim",
        "3",
        "--size",
        "3",
        "--from",
        "2",
        "--to",
        "3",
        "--file",
        &data("substituted_cubic.poly"),
        "--json",
    ]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let p = Poly::parse(
        &std::fs::read_to_string(data("substituted_cubic.poly")).unwrap().trim(),
        3,
    )
    .unwrap();
    let diagram = NewtonDiagram::from_quotient(&p.divide_by_hyperplane().quotient);
    let view = diagram.view(1, 2).unwrap();
    assert_eq!(
        value["verdicts"]["view"],
        serde_json::to_value(view.dump()).unwrap()
    );
    assert_eq!(value["verdicts"]["hidden_nodes"], 3);
}

#[test]
fn view_size_assertion_fails_cleanly() {
    let output = run(&[
        "view",
        "--dim",
        "3",
        "--size",
        "7",
        "--from",
        "2",
        "--to",
        "3",
        "--file",
        &data("substituted_cubic.poly"),
    ]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn whitney_matches_library_generate() {
    let output = run(&["whitney", "--dim", "4", "--degree", "2", "--json"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let trace = whitney::generate(4, 2, &Chooser::LexLargest).unwrap();
    assert_eq!(
        value["verdicts"]["polynomial"],
        trace.polynomial.to_string()
    );
    assert_eq!(value["verdicts"]["terms"], 7);
    assert_eq!(value["verdicts"]["node_count"], 8);
    assert_eq!(value["verdicts"]["sharp_whitney"], true);
}

#[test]
fn whitney_human_output_prints_the_polynomial_first() {
    let output = run(&["whitney", "--dim", "3", "--degree", "3"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let first = text.lines().next().unwrap();
    assert_eq!(
        first,
        whitney::generate(3, 3, &Chooser::LexLargest)
            .unwrap()
            .polynomial
            .to_string()
    );
    assert!(text.contains("\"sharp_whitney\": true"));
}

#[test]
fn crmap_reports_the_degree_two_map() {
    let output = run(&["crmap", "--file", &data("deg2.map")]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["degree"], 2);
    assert_eq!(value["bound"], "3");
    assert_eq!(value["holds"], true);
    assert_eq!(value["component_count"], 3);
}

#[test]
fn crmap_rejects_improper_maps() {
    let dir = std::env::temp_dir().join("newtondiag-improper.map");
    std::fs::write(&dir, "1 : z1^2\n").unwrap();
    let output = run(&["crmap", "--file", dir.to_str().unwrap(), "--dim", "2"]);
    assert_eq!(output.status.code(), Some(1));
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(
        err.contains("not proper"),
        "expected a properness failure: {err}"
    );
}

#[test]
fn search_verifies_and_matches_library_census() {
    let output = run(&["search", "--dim", "4", "--size", "2", "--json"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let report = oracle::verify_bound(4, 2, 1).unwrap();
    assert_eq!(value["verdicts"]["valid_count"], report.valid_count);
    let census = report.at_requested_size().unwrap();
    let last = value["verdicts"]["per_size"]
        .as_array()
        .unwrap()
        .last()
        .unwrap()
        .clone();
    assert_eq!(last["min_node_count"], census.min_node_count as u64);
    assert_eq!(last["all_minimizers_one_point_per_degree"], true);
}

#[test]
fn search_exit_codes_for_budget_refusal() {
    let output = run(&["search", "--dim", "3", "--size", "9"]);
    assert_eq!(output.status.code(), Some(3));
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(
        err.contains("3^165"),
        "budget message should name the exponent: {err}"
    );
}

#[test]
fn search_dumps_minimizers() {
    let path = std::env::temp_dir().join("newtondiag-minimizers.json");
    let _ = std::fs::remove_file(&path);
    let output = run(&[
        "search",
        "--dim",
        "3",
        "--size",
        "2",
        "--dump-minimizers",
        path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    let dumps: Vec<serde_json::Value> = serde_json::from_str(&body).unwrap();
    assert_eq!(dumps.len(), 3);
    for dump in &dumps {
        assert_eq!(dump["dimension"], 3);
        assert_eq!(dump["size"], 2);
    }
}

#[test]
fn search_json_is_byte_identical_across_runs_and_workers() {
    let first = run(&["search", "--dim", "3", "--size", "2", "--json"]);
    let second = run(&["search", "--dim", "3", "--size", "2", "--json"]);
    assert_eq!(first.stdout, second.stdout);
    let eight = run(&[
        "search",
        "--dim",
        "3",
        "--size",
        "2",
        "--workers",
        "8",
        "--json",
    ]);
    assert_eq!(first.stdout, eight.stdout);
}

#[test]
fn search_audit_runs_for_four_variables() {
    let output = run(&["search", "--dim", "4", "--size", "2", "--audit", "--json"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["verdicts"]["audit"]["diagrams_checked"], 16);
    assert_eq!(value["verdicts"]["audit"]["min_margin"], 0);
}

#[test]
fn lemma42_verifies_and_refuses_large_windows() {
    let output = run(&["lemma42", "--max-height", "2", "--max-width", "2", "--json"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["verdicts"]["simple_count"], 78);
    assert_eq!(value["verdicts"]["min_slack"], 0);

    let output = run(&["lemma42", "--max-height", "4"]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn faces_lists_the_unit_simplex() {
    let output = run(&["faces", "x + y + z", "--dim", "3", "--json"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["verdicts"]["count"], 4);
    let faces = value["verdicts"]["faces"].as_array().unwrap();
    let vertical = faces.iter().filter(|f| f["type"] == "vertical").count();
    assert_eq!(vertical, 3);
}
