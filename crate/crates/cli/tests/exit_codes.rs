mod common;

use common::{ncdef, ncdef_on};
use serde_json::Value;

fn write_workspace(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    std::io::Write::write_all(&mut f, text.as_bytes()).unwrap();
    f
}

fn error_path(text: &str, args: &[&str]) -> String {
    let f = write_workspace(text);
    let path = f.path().to_string_lossy().into_owned();
    let mut all = vec!["--input", path.as_str()];
    all.extend_from_slice(args);
    let run = ncdef(&all);
    assert_eq!(run.code, 2, "stdout: {}", run.stdout);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    v["path"].as_str().unwrap().to_string()
}

const BASE: &str = r#"{
  "field": "F:5",
  "quivers": {"Q": {"vertices": ["1", "2"], "arrows": [{"name": "a", "source": "1", "target": "2"}]}},
  "algebras": {"A": {"quiver": "Q"}},
  "modules": {
    "M": {"over": "A", "dims": [1, 1], "arrows": {"a": [["1"]]}}
  }
}"#;

#[test]
fn a_valid_workspace_passes() {
    let f = write_workspace(BASE);
    let run = ncdef(&["--input", &f.path().to_string_lossy(), "hom", "M", "M"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
}

#[test]
fn wrong_matrix_shape_reports_the_arrow() {
    let text = BASE.replace(r#""a": [["1"]]"#, r#""a": [["1", "0"]]"#);
    assert_eq!(error_path(&text, &["hom", "M", "M"]), "modules.M.arrows.a");
}

#[test]
fn bad_scalar_reports_the_entry() {
    let text = BASE.replace(r#""a": [["1"]]"#, r#""a": [["one"]]"#);
    assert_eq!(error_path(&text, &["hom", "M", "M"]), "modules.M.arrows.a[0][0]");
}

#[test]
fn schema_violations_report_the_key() {
    let text = BASE.replace(r#""dims": [1, 1]"#, r#""dims": "two""#);
    assert_eq!(error_path(&text, &["hom", "M", "M"]), "modules.M.dims");
    let text = BASE.replace(r#""over": "A""#, r#""over": "A", "colour": "red""#);
    assert_eq!(error_path(&text, &["hom", "M", "M"]), "modules.M.colour");
}

#[test]
fn unknown_fields_and_references_exit_two() {
    let text = BASE.replace(r#""field": "F:5""#, r#""field": "F:6""#);
    assert_eq!(error_path(&text, &["hom", "M", "M"]), "field");
    let text = BASE.replace(r#""over": "A""#, r#""over": "Nowhere""#);
    assert_eq!(error_path(&text, &["hom", "M", "M"]), "modules.M.over");
    assert_eq!(error_path(BASE, &["hom", "M", "X"]), "TGT");
}

#[test]
fn non_intertwining_map_is_an_input_error() {
    let run = ncdef_on("worked_example.json", &["--format", "json", "hom", "M", "M"]);
    assert_eq!(run.code, 0);
    let text = std::fs::read_to_string(common::fixture("worked_example.json"))
        .unwrap()
        .replace(r#"[["1"], ["0"]]]},"#, r#"[["0"], ["1"]]]},"#);
    assert_eq!(error_path(&text, &["class-of-ses", "b", "c"]), "homs.b");
}

#[test]
fn relation_violations_are_reported_on_the_module() {
    let text = r#"{
      "field": "Q",
      "quivers": {"L": {"vertices": ["1"], "arrows": [{"name": "x", "source": "1", "target": "1"}]}},
      "relations": {"r": {"quiver": "L", "relations": [[{"coeff": "1", "path": ["x", "x"]}]]}},
      "algebras": {"A": {"quiver": "L", "relations": "r"}},
      "modules": {"M": {"over": "A", "dims": [1], "arrows": {"x": [["1/2"]]}}}
    }"#;
    assert_eq!(error_path(text, &["loewy", "M"]), "modules.M");
}

#[test]
fn math_failures_exit_one_with_a_witness() {
    let run = ncdef_on("worked_example.json", &["simple-collection", "Zdot"]);
    assert_eq!(run.code, 1);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["witness"]["pair"], serde_json::json!(["M", "L3"]));
}

#[test]
fn missing_workspace_and_bad_field_exit_two() {
    assert_eq!(ncdef(&["hom", "M", "N"]).code, 2);
    assert_eq!(ncdef(&["--input", "/nonexistent/ws.json", "hom", "M", "N"]).code, 2);
    assert_eq!(ncdef(&["verify-54", "--field", "F:4"]).code, 2);
}

#[test]
fn budget_is_read_from_the_environment() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_ncdef"))
        .args(["--input", &common::fixture("one_loop.json"), "ncdef", "A2", "sigma"])
        .env("NCDEF_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
