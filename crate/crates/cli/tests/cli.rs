use std::path::PathBuf;
use std::process::{Command, Output};

use canonclass::{CartanType, Orbit, Poly};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canonclass")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("canonclass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn b2_example_every_engine() {
    for engine in ["gz", "ordered", "tower", "typed", "brute", "billey"] {
        let o = run(&["restrict", "--type", "B", "--rank", "2", "--p", "-2,1", "--q", "2,1", "--engine", engine]);
        assert_eq!(o.status.code(), Some(0), "{engine}");
        assert_eq!(stdout(&o).trim(), "x1 + x2", "{engine}");
    }
}

#[test]
fn typed_ledger_in_json() {
    let o = run(&[
        "restrict", "--type", "B", "--rank", "2", "--p", "m:-2,1", "--q", "m:2,1", "--engine", "typed", "--ledger",
        "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"]["text"], "x1 + x2");
    assert!(stdout(&o).contains("\"relevant\""));
}

#[test]
fn weyl_prefix_changes_the_reading() {
    let m = run(&["restrict", "--type", "B", "--rank", "2", "--p", "-2,1", "--q", "-2,1", "--format", "json"]);
    let w = run(&["restrict", "--type", "B", "--rank", "2", "--p", "w:-2,1", "--q", "w:-2,1", "--format", "json"]);
    let m: serde_json::Value = serde_json::from_str(&stdout(&m)).unwrap();
    let w: serde_json::Value = serde_json::from_str(&stdout(&w)).unwrap();
    assert_eq!(m["p"], "1,-2");
    assert_eq!(w["p"], "-2,1");
}

#[test]
fn compare_a2() {
    let o = run(&["compare", "--type", "A", "--rank", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 mismatches / 36 pairs"));
}

#[test]
fn compare_graph() {
    let o = run(&["compare", "--graph", &data("cp2.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pairs_checked"], 9);
}

#[test]
fn validate_exit_codes() {
    assert_eq!(run(&["validate", "--graph", &data("cp2.json")]).status.code(), Some(0));
    let broken = r#"{"rank": 2,
        "vertices": [{"id": "a", "moment": ["0", "0"]}, {"id": "b", "moment": ["1", "0"]}],
        "edges": [{"src": "a", "dst": "b", "weight": ["1", "0"]}, {"src": "b", "dst": "a", "weight": ["-2", "0"]}]}"#;
    let p = temp("broken.json", broken);
    let o = run(&["validate", "--graph", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("mirror"));
    assert_eq!(run(&["validate", "--graph", "/nonexistent/graph.json"]).status.code(), Some(2));
    let p = temp("garbage.json", "{ not json");
    assert_eq!(run(&["validate", "--graph", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn computation_errors_exit_two() {
    let o = run(&["restrict", "--type", "A", "--rank", "2", "--p", "9,9,9", "--q", "1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let o = run(&["table", "--type", "B", "--rank", "4", "--engine", "billey"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dot_export() {
    let o = run(&["export", "--graph", &data("cp2.json"), "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 3);
    assert_eq!(s.matches(" -> ").count(), 6);
}

#[test]
fn json_export_round_trips() {
    let o = run(&["export", "--type", "C", "--rank", "2", "--json"]);
    let g = canonclass::GkmGraph::from_json_str(&stdout(&o)).unwrap();
    assert_eq!(g.num_vertices(), 8);
}

#[test]
fn printed_values_reparse() {
    let o = run(&["table", "--type", "C", "--rank", "2", "--format", "csv"]);
    let s = stdout(&o);
    let mut rows = 0;
    for line in s.lines().skip(1) {
        let value = line.rsplit(',').next().unwrap().trim_matches('"');
        let p = Poly::parse(value, 2).unwrap();
        assert_eq!(p.to_string(), value);
        rows += 1;
    }
    assert_eq!(rows, 64);
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--type", "A", "--rank", "3", "--format", "json", "--engine", "typed"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let par = ["table", "--type", "A", "--rank", "3", "--format", "json", "--engine", "typed", "--parallel"];
    assert_eq!(run(&args).stdout, run(&par).stdout);
}

#[test]
fn certify_flag() {
    let o = run(&["table", "--type", "D", "--rank", "3", "--certify"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn graph_with_tower_file() {
    let orbit = Orbit::standard(CartanType::A, 2).unwrap();
    let g = run(&["orbit", "--type", "A", "--rank", "2", "--level", "2"]);
    let gp = temp("a2.json", &stdout(&g));
    let tp = temp("a2-tower.json", &orbit.tower().to_json(orbit.graph()).to_string());
    let tower = run(&["table", "--graph", gp.to_str().unwrap(), "--tower", tp.to_str().unwrap(), "--engine", "tower"]);
    assert_eq!(tower.status.code(), Some(0), "{}", String::from_utf8_lossy(&tower.stderr));
    // the graph carries its own generic vector choice, so compare against gz on the same input
    let gz = run(&["table", "--graph", gp.to_str().unwrap(), "--engine", "gz"]);
    assert_eq!(stdout(&tower), stdout(&gz));
}

#[test]
fn orbit_summary() {
    let o = run(&["orbit", "--type", "B", "--rank", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("B2: 8 fixed points"));
    assert!(s.contains("theta != 1: 0"));
}
