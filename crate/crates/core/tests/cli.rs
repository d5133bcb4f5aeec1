//! The command-line binary, run as a subprocess.

use std::io::Write;
use std::process::{Command, Output, Stdio};

const TREE_7_8: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/tree_7_8.txt");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bipartite-surplus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_commands() {
    let o = run(&["count-exact", "2", "3", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"count":"6"}"#);
    assert_eq!(stdout(&run(&["count-exact", "2", "3", "0"])).trim(), "12");
    assert_eq!(stdout(&run(&["count-oracle", "3", "3", "2"])).trim(), stdout(&run(&["count-exact", "3", "3", "2"])).trim());
    assert_eq!(stdout(&run(&["count-exact", "7", "7", "0"])).trim(), "13841287201");
    let big = stdout(&run(&["count-exact", "8", "8", "0", "--json"]));
    let v: serde_json::Value = serde_json::from_str(&big).unwrap();
    assert_eq!(v["count"], "4398046511104");
}

#[test]
fn estimates_carry_their_seed_and_reproduce() {
    let args = ["count-estimate", "4", "4", "2", "--samples", "20000", "--seed", "5", "--json"];
    let a = stdout(&run(&args));
    assert_eq!(a, stdout(&run(&args)));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 5);
    assert_eq!(v["samples"], 20000);
    let mean = v["mean"].as_f64().unwrap();
    let se = v["stderr"].as_f64().unwrap();
    assert!((mean - 9552.0 / 4096.0).abs() < 4.0 * se);
    assert!(v["log_value"].is_f64());

    let rho = stdout(&run(&["rho-estimate", "1", "--resolution", "200", "--samples", "2000", "--json"]));
    let v: serde_json::Value = serde_json::from_str(&rho).unwrap();
    assert!(v["value"].as_f64().unwrap() > 0.5);
    assert!(v["seed"].is_u64());
}

#[test]
fn asymptotic_command() {
    let o = run(&["count-asymptotic", "3", "4", "0", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let expected = (3f64.powi(3) * 4f64.powi(2)).ln();
    assert!((v["log_value"].as_f64().unwrap() - expected).abs() < 1e-9);
    assert_eq!(run(&["count-asymptotic", "3", "4", "2"]).status.code(), Some(2));
    assert_eq!(run(&["count-asymptotic", "3", "4", "2", "--rho", "0.2"]).status.code(), Some(0));
}

#[test]
fn explore_csv_reproduces_the_lukasiewicz_path() {
    let o = run(&["explore", TREE_7_8, "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,X_white,X_black,Z"));
    let z: Vec<String> = lines.map(|l| l.rsplit(',').next().unwrap().to_string()).collect();
    assert_eq!(z, ["0", "3", "3", "3", "2", "1", "0", "-1", ""]);

    let text = stdout(&run(&["explore", TREE_7_8]));
    assert!(text.contains("[W]\n20\n"));
    assert!(text.contains("[candidate_edges]\n5●4° 5●6°"));
}

#[test]
fn explore_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bipartite-surplus"))
        .args(["explore", "-", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"2 2\n1 1\n1 2\n2 1\n2 2\n").unwrap();
    let o = child.wait_with_output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["W"], 1);
    assert_eq!(v["surplus_edges"].as_array().unwrap().len(), 1);
}

#[test]
fn sample_commands() {
    let o = run(&["sample-tree", "4", "6", "--seed", "8"]);
    let text = stdout(&o);
    assert!(text.starts_with("# seed=8 stream=0\n"));
    let g = bipartite_surplus::graph::BipartiteGraph::parse(&text).unwrap();
    assert!(g.is_spanning_tree());
    let several = stdout(&run(&["sample-tree", "3", "3", "--samples", "3"]));
    assert_eq!(several.matches("# sample").count(), 3);

    let o = run(&["sample-w", "5", "5", "--samples", "7", "--stream", "2"]);
    assert_eq!(stdout(&o).lines().count(), 7);
    assert!(stdout(&o).lines().all(|l| l.parse::<u64>().is_ok()));
    assert!(String::from_utf8_lossy(&o.stderr).contains("stream=2"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["count-exact", "8", "8", "1", "--budget", "1000"]).status.code(), Some(3));
    let o = run(&["count-oracle", "6", "6", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("instance too large for oracle"));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["count-exact", "2", "x", "1"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "nope"]).status.code(), Some(2));

    let dir = std::env::temp_dir().join(format!("bip-surplus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "2 2\n1 5\n").unwrap();
    let o = run(&["explore", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let split = dir.join("split.txt");
    std::fs::write(&split, "2 2\n1 1\n2 2\n").unwrap();
    assert_eq!(run(&["explore", split.to_str().unwrap()]).status.code(), Some(4));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn validate_suite_json() {
    let o = run(&["validate", "tau", "--json", "--samples", "5000"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert!(reports.iter().all(|r| r["passed"] == true));
}
