use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_suppcone"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("suppcone-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn orthant_is_self_dual() {
    let o = run(&["cone", "--dual"], r#"{"generators":[[1,0],[0,1]]}"#);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["generators"], serde_json::json!([[0, 1], [1, 0]]));
}

#[test]
fn ex_min_reports_dual_generators() {
    let o = run(&["check-example", "ex_min"], "");
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["matches"], true);
    assert_eq!(
        v["checks"][0]["detail"]["tau_dual_generators"],
        serde_json::json!([[0, 1], [1, -1]])
    );
}

#[test]
fn saavedra_both_branches() {
    let o = run(&["check-example", "ex_saavedra"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn all_fixtures_are_deterministic() {
    let a = run(&["check-example", "--all"], "");
    let b = run(&["check-example", "--all"], "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a).as_array().unwrap().len(), 10);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["check-example", "nope"], "").status.code(), Some(2));
    assert_eq!(run(&["check-example"], "").status.code(), Some(2));
    assert_eq!(run(&["tau"], "not json").status.code(), Some(2));
    assert_eq!(run(&["tau"], r#"{"rays":[{"base":[0],"step":[1,0]}]}"#).status.code(), Some(2));
    assert_eq!(run(&["normalize"], r#"{"bogus":1}"#).status.code(), Some(2));
}

#[test]
fn tau_of_a_single_ray() {
    let o = run(&["tau"], r#"{"rays":[{"base":[0,0],"step":[1,-1]}]}"#);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["tau_dual"]["generators"], serde_json::json!([[0, 1], [1, -1]]));
}

#[test]
fn asroot_chevalley() {
    let input = r#"{"a":{"p":2,"terms":[{"exp":[-1],"c":1}]},"weight":[1]}"#;
    let o = run(&["asroot", "--depth", "3"], input);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["certified"], true);
    assert_eq!(v["root"]["terms"].as_array().unwrap().len(), 3);
    assert_eq!(v["residual"]["terms"][0]["exp"], serde_json::json!([[-1, 8]]));
}

#[test]
fn gap_flags_a_wide_jump() {
    let input = r#"{
        "series": {"p":2,"terms":[{"exp":[1,-1],"c":1},{"exp":[16,-16],"c":1}]},
        "coefficients": [
            {"p":2,"terms":[{"exp":[1,-1],"c":1}]},
            {"p":2,"terms":[{"exp":[0,0],"c":1}]},
            {"p":2,"terms":[{"exp":[0,0],"c":1}]}
        ],
        "weight": [2,1]
    }"#;
    let o = run(&["gap"], input);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["first_violation"], 0);
}

#[test]
fn plot_writes_csv_and_svg() {
    let svg = scratch("ex4.svg");
    let csv = scratch("ex4.csv");
    let spec = r#"{"rays":[{"base":[1,0],"step":[2,-1]}],
                   "ptails":[{"base":[1,0],"dir":[1,-1],"p":2}]}"#;
    let o = run(
        &["plot", "--levels", "4", "--svg", svg.to_str().unwrap(), "--output", csv.to_str().unwrap()],
        spec,
    );
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("dual-cone") && text.contains("ptail"));
    let table = std::fs::read_to_string(&csv).unwrap();
    assert!(table.starts_with("kind,x,y\n"));
    assert!(table.contains("limit,2,-1"));
}

#[test]
fn plot_empty_and_wrong_dimension() {
    let o = run(&["plot"], r#"{"dim":2}"#);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "kind,x,y\n");
    let o = run(&["plot"], r#"{"points":[[1,2,3]]}"#);
    assert_eq!(o.status.code(), Some(2));
}
