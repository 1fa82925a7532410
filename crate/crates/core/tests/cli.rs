use std::path::Path;
use std::process::{Command, Output};

fn magcube(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magcube")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = magcube(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn arrangements_list() {
    let text = stdout(&["arrangements", "--planar", "false"]);
    assert_eq!(text.lines().count(), 28);
    assert_eq!(text.lines().next(), Some("L,FB,TU,R"));
    assert!(text.lines().any(|l| l == "S,N,0,N"));
    assert_eq!(stdout(&["arrangements", "--planar", "true"]).lines().count(), 10);
}

#[test]
fn fixed_counts() {
    assert_eq!(stdout(&["count", "--dim", "2", "--n", "3"]), "n,A\n3,6\n");
    assert_eq!(stdout(&["count", "--dim", "3", "--n", "3"]), "n,A\n3,15\n");
    assert_eq!(stdout(&["count", "--dim", "2", "--n", "4", "--all"]), "n,A\n1,1\n2,2\n3,6\n4,19\n");
}

#[test]
fn colored_table_and_enumeration() {
    let table = stdout(&["color-table", "--n-max", "4", "--type-a", "cyan", "--type-b", "magenta"]);
    assert!(table.lines().any(|l| l == "4,3,26"));
    let listing = stdout(&["enumerate", "--supply", "cyan=1,magenta=3"]);
    assert_eq!(listing.lines().count(), 27);
    let json = stdout(&["enumerate", "--supply", "cyan=1,magenta=3", "--format", "json"]);
    assert!(json.starts_with(r#"[[{"x":0,"y":0,"z":0,"color":"#));
}

#[test]
fn planning_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let start = write(dir.path(), "start.json", r#"[{"x":1,"y":1,"color":"cyan"},{"x":4,"y":3,"color":"magenta"}]"#);
    let out = stdout(&["plan", "--workspace", "6x6", "--start", &start, "--format", "json"]);
    let plan: serde_json::Value = serde_json::from_str(&out).unwrap();
    let map = plan.as_object().unwrap();
    assert!(!map.is_empty());
    for entry in map.values() {
        assert!(entry["moves"].is_string());
        assert!(entry["translation_steps"].is_u64());
    }
}

#[test]
fn monte_carlo_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("stats.csv");
    let out = out.to_str().unwrap();
    let args = ["mc", "--supply", "cyan=1,magenta=3", "--workspace", "8x8", "--trials", "3", "--restarts", "2", "--seed", "5", "--out", out];
    stdout(&args);
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().count(), 27);
}

#[test]
fn render_shapes() {
    let dir = tempfile::tempdir().unwrap();
    let shapes = write(dir.path(), "d.json", r#"[{"x":0,"y":0,"color":"magenta"},{"x":0,"y":1,"color":"magenta"}]"#);
    let svg = stdout(&["render", "--shapes", &shapes]);
    assert_eq!(svg.matches("<rect").count(), 2);
    assert_eq!(svg.matches(r#"class="bond""#).count(), 1);
}

#[test]
fn exit_statuses() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(magcube(&["count", "--n", "3", "--bogus"]).status.code(), Some(1));
    assert_eq!(magcube(&["count", "--dim", "5", "--n", "3"]).status.code(), Some(1));
    assert_eq!(magcube(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(magcube(&["count", "--n", "14", "--budget-nodes", "1000"]).status.code(), Some(2));
    let empty = write(dir.path(), "empty.json", "");
    let out = magcube(&["render", "--shapes", &empty]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    let bad = write(dir.path(), "bad.json", r#"{"types":[{"name":"x","planar":true,"L":"0","FB":"0","TU":"0","R":"0"}]}"#);
    assert_eq!(magcube(&["--catalog", &bad, "count", "--n", "2"]).status.code(), Some(3));
    assert_eq!(magcube(&["--help"]).status.code(), Some(0));
}

#[test]
fn help_lists_defaults() {
    let help = stdout(&["mc", "--help"]);
    for flag in ["--supply", "--workspace", "--trials", "--restarts", "--seed", "--out", "--format", "--workers", "--budget-nodes", "--catalog"] {
        assert!(help.contains(flag), "{flag}");
    }
    assert!(help.contains("[default: 1000]"));
    assert!(help.contains("[default: 11x11]"));
}

#[test]
fn outputs_are_byte_stable_across_workers() {
    for args in [
        vec!["count", "--dim", "3", "--n", "6", "--all"],
        vec!["enumerate", "--supply", "cyan=2,magenta=3", "--format", "json"],
        vec!["color-table", "--n-max", "5", "--type-a", "cyan", "--type-b", "magenta", "--format", "json"],
    ] {
        let mut one = args.clone();
        one.extend(["--workers", "1"]);
        let mut four = args.clone();
        four.extend(["--workers", "4"]);
        assert_eq!(stdout(&one), stdout(&four), "{args:?}");
    }
}
