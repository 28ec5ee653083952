use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn tropgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropgraph")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn density_command() {
    let out = tropgraph(&["density", "K3", "K4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["density"], "3/8");
    assert_eq!(v["hom_count"], "24");
}

#[test]
fn graph_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tropgraph"))
        .args(["density", "edge", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"r":2,"n":3,"edges":[[0,1],[1,2],[0,2]]}"#).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["density"], "2/3");
}

#[test]
fn exit_codes() {
    assert_eq!(tropgraph(&["density", "{\"r\":2", "K3"]).status.code(), Some(4));
    assert_eq!(tropgraph(&["density", "@/nonexistent.json", "K3"]).status.code(), Some(4));
    assert_eq!(tropgraph(&["no-such-command"]).status.code(), Some(4));
    assert_eq!(tropgraph(&["--help"]).status.code(), Some(0));
    assert_eq!(tropgraph(&["clique-cone", "--r", "3", "--l", "2"]).status.code(), Some(2));
    assert_eq!(tropgraph(&["density", "K3", "K4", "--format", "csv"]).status.code(), Some(4));
    let out = tropgraph(&["obstruction", "P4", "P4", "--k", "1", "--d", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["conclusion"], "precondition_failure");
}

#[test]
fn trop_sos_degenerate_and_deterministic() {
    let out = tropgraph(&["trop-sos", "--d", "1", "--labels", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["degenerate"], true);
    let a = tropgraph(&["trop-sos", "--d", "2", "--labels", "4"]);
    let b = tropgraph(&["trop-sos", "--d", "2", "--labels", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["round_trip"], true);
}

#[test]
fn binomials() {
    let v = json(&tropgraph(&["test-binomial", "path2", "e^2", "--cone", "star", "--r", "2", "--c", "1", "--l", "2"]));
    assert_eq!(v["verdict"], "valid on trop");
    assert_eq!(v["exponent"], serde_json::json!([-2, 1]));
    let v = json(&tropgraph(&["test-binomial", "e^3", "K3^2", "--cone", "clique", "--l", "3"]));
    assert_eq!(v["verdict"], "valid on trop");
    let v = json(&tropgraph(&["test-binomial", "K3^2", "e^3", "--cone", "clique", "--l", "3"]));
    assert_eq!(v["verdict"], "not valid");
    assert!(v["certificate"]["separator"].is_array());
    let v = json(&tropgraph(&["test-binomial", "P3", "P3", "--cone", "trop-sos", "--d", "2"]));
    assert_eq!(v["verdict"], "valid on trop");
}

#[test]
fn cones_csv() {
    let out = tropgraph(&["clique-cone", "--r", "2", "--l", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("kind,y1,y2\n"));
    assert!(text.contains("ray,-2,-3\n") && text.contains("ray,0,-1\n"));
    let v = json(&tropgraph(&["star-cone", "--r", "3", "--c", "2", "--l", "4"]));
    assert_eq!(v["dd_agrees"], true);
}

#[test]
fn trajectories() {
    let out =
        tropgraph(&["trajectory", "--family", "clique", "--l", "3", "--i", "2", "--alpha", "1e-1,1e-2,1e-3,1e-4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 5);
    let distance: f64 = rows[4].rsplit(',').next().unwrap().parse().unwrap();
    assert!(distance < 0.05);
    let v = json(&tropgraph(&[
        "trajectory",
        "--family",
        "star",
        "--l",
        "3",
        "--m",
        "2",
        "--rho",
        "1e-4",
        "--format",
        "json",
    ]));
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(
        tropgraph(&["trajectory", "--family", "star", "--l", "3", "--m", "2", "--rho", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn minor_certificates() {
    let out = tropgraph(&["minor-certificate", "--fixed", "e=7/10", "--fixed", "K3=3/25", "--free", "path2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"]["verdict"], "refuted");
    let out = tropgraph(&["minor-certificate", "--fixed", "e=0.7", "--fixed", "K3=0.343", "--free", "path2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = tropgraph(&["minor-certificate", "--fixed", "e=0.7", "--free", "path2", "--free", "K3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn random_graph_to_file() {
    let dir = std::env::temp_dir().join(format!("tropgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.json");
    let p = path.to_str().unwrap();
    let out = tropgraph(&["random-graph", "--n", "8", "--edge-prob", "0.5", "--seed", "7", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let again = tropgraph(&["random-graph", "--n", "8", "--edge-prob", "0.5", "--seed", "7"]);
    assert_eq!(std::fs::read(&path).unwrap(), again.stdout);
    let at = format!("@{p}");
    assert_eq!(tropgraph(&["density", "edge", &at]).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}
