use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn shiftlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shiftlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_spec(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_owned()
}

const FEL3: &str = r#"{"kind":"step","window":3,"predicate":{"kind":"first_equals_last"}}"#;

#[test]
fn help_and_version_exit_zero() {
    let o = shiftlab(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify-prop1"));
    let o = shiftlab(&["--version"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("shiftlab "));
}

#[test]
fn usage_errors_exit_one_with_a_single_line() {
    for args in [
        &["bogus"][..],
        &["verify-prop1"],
        &["verify-prop1", "--m", "x"],
        &["verify-prop1", "--m", "0"],
        &["verify-prop1", "--m", "1", "--threshold", "1"],
        &["spectrum", "--spec", "/nonexistent/spec.json", "--max-len", "2"],
    ] {
        let o = shiftlab(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert_eq!(stderr(&o).lines().count(), 1, "{args:?}: {}", stderr(&o));
        assert!(stdout(&o).is_empty());
    }
}

#[test]
fn malformed_inputs_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_spec(dir.path(), "bad.json", r#"{"kind":"step","window":1,"predicate":{"kind":"first_equals_last"}}"#);
    let o = shiftlab(&["spectrum", "--spec", &bad, "--max-len", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let good = write_spec(dir.path(), "fel.json", FEL3);
    let o = shiftlab(&["member", "--spec", &good, "--point", r#"{"kind":"ep","pre":[],"per":[]}"#]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--point"));
}

#[test]
fn verify_prop1_writes_a_tagged_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = shiftlab(&["verify-prop1", "--m", "2", "--json", path.to_str().unwrap(), "--audit"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("audit: ok"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["schema"], "shiftlab/1");
    assert_eq!(report["command"], "verify-prop1");
    assert_eq!(report["M"], 2);
    assert_eq!(report["spectrum"][3]["status"], "absent");
    assert_eq!(report["spectrum"][2]["witness"], serde_json::json!([0, 0]));
}

#[test]
fn small_budgets_fail_with_exit_two() {
    // Below the threshold no length-1 word can be verified.
    let o = shiftlab(&["verify-prop1", "--m", "1", "--truncation", "4", "--threshold", "5"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "fel.json", FEL3);
    let runs: Vec<[&str; 6]> = vec![
        ["verify-prop1", "--m", "1", "--truncation", "8", "--threshold"],
        ["spectrum", "--spec", &spec, "--max-len", "4", "--threshold"],
    ];
    for args in &runs {
        let mut outputs = Vec::new();
        for i in 0..2 {
            let path = dir.path().join(format!("out{i}.json"));
            let mut full: Vec<&str> = args.to_vec();
            full.extend(["4", "--json", path.to_str().unwrap()]);
            let o = shiftlab(&full);
            assert_eq!(o.status.code(), Some(0));
            outputs.push((stdout(&o), std::fs::read(&path).unwrap()));
        }
        assert_eq!(outputs[0], outputs[1], "{args:?}");
    }
}

#[test]
fn member_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "fel.json", FEL3);
    let o = shiftlab(&["member", "--spec", &spec, "--point", r#"{"kind":"ep","pre":[],"per":[0,5]}"#, "--audit"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("IN (exact)"));
    assert!(stdout(&o).contains("audit: ok"));

    let o = shiftlab(&["member", "--spec", &spec, "--point", r#"{"kind":"ep","pre":[],"per":[0,1,2]}"#]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("OUT"));

    let o = shiftlab(&["member", "--spec", &spec, "--point", r#"{"kind":"finite","word":[0]}"#, "--audit"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("audit: ok"));

    let path = dir.path().join("m.json");
    let o = shiftlab(&[
        "member", "--spec", &spec, "--point", r#"{"kind":"finite","word":[0,5,0]}"#,
        "--json", path.to_str().unwrap(), "--audit",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("not_verified") || stdout(&o).contains("NotVerified"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["membership"]["kind"], "budgeted");
    assert_eq!(report["membership"]["verdict"]["counts_at"]["16"], 1);
}

#[test]
fn spectrum_and_periodic() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "fel.json", FEL3);
    let o = shiftlab(&["spectrum", "--spec", &spec, "--max-len", "3", "--audit"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("1   verified  0"));
    assert!(text.contains("2   absent"));

    let path = dir.path().join("p.json");
    let o = shiftlab(&[
        "periodic", "--spec", &spec, "--period", "2", "--truncation", "2",
        "--json", path.to_str().unwrap(), "--audit",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("4 points with period 2"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["points"].as_array().unwrap().len(), 4);
    assert_eq!(report["points"][0], serde_json::json!({"kind":"ep","pre":[],"per":[0]}));

    let o = shiftlab(&["periodic", "--spec", &spec, "--period", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn demos() {
    let o = shiftlab(&["zero-step", "--x0", "3", "--audit"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("{3}"));

    let o = shiftlab(&["sigma-demo", "--audit"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("m=1   n0=2"));
    assert!(stdout(&o).contains("not continuous"));

    let o = shiftlab(&["converge-demo", "--m", "3", "--audit"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("m=8   n0=8"));
}

#[test]
fn run_in_process() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = shiftlab_cli::run(["shiftlab", "sigma-demo"], &mut out, &mut err);
    assert_eq!(code, shiftlab_cli::EXIT_OK);
    assert!(err.is_empty());
    assert!(String::from_utf8(out).unwrap().contains("σ is not continuous at Ø"));
}
