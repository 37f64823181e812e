mod common;

use std::process::{Command, Output};

use common::fixture_path;

fn lqn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lqn")).args(args).env_remove("LQN_TOL").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

#[test]
fn compute_tritter() {
    let o = lqn(&["compute", &path("tritter.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("perfect matchings: 6"));
    assert!(text.contains("postselect probability: 0.111111111"));
    assert_eq!(text.matches("|").count(), 3);

    let o = lqn(&["compute", &path("tritter.json"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["postselect_probability"].as_f64().unwrap() - 1.0 / 9.0).abs() < 1e-12);
    let kets: Vec<&str> = v["terms"].as_array().unwrap().iter().map(|t| t["ket"].as_str().unwrap()).collect();
    assert_eq!(kets, ["duu", "udu", "uud"]);
    assert!(stdout(&o).is_ascii());
}

#[test]
fn analyze_n5() {
    let o = lqn(&["analyze", &path("n5_example.json"), "--numeric", "5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["numeric_finest_partition"]["blocks"], serde_json::json!([[1, 4], [2, 5], [3]]));
    assert_eq!(v["lemma2_partition"]["blocks"], serde_json::json!([[1, 3, 4], [2, 5]]));
    assert_eq!(v["lemma1_vertices"][0]["detector"], 3);
    assert_eq!(v["lemma1_vertices"][0]["color"], "up");

    let text = stdout(&lqn(&["analyze", &path("n5_example.json"), "--numeric"]));
    assert!(text.contains("numeric finest partition (network amplitudes): (X1,X4)|(X2,X5)|(X3)"));
}

#[test]
fn pm_diagram_outputs() {
    let text = stdout(&lqn(&["pm-diagram", &path("n5_example.json")]));
    assert!(text.contains("removed edges (3): (2,X1) (2,X3) (2,X4)"));
    let dot = stdout(&lqn(&["pm-diagram", &path("n5_example.json"), "--dot"]));
    assert_eq!(dot.matches(" -> ").count(), 11);
}

#[test]
fn verify_every_fixture() {
    let dir = std::fs::read_dir(fixture_path("")).unwrap();
    let mut seen = 0;
    for entry in dir {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "json") {
            let o = lqn(&["verify", p.to_str().unwrap()]);
            assert_eq!(o.status.code(), Some(0), "{}", p.display());
            seen += 1;
        }
    }
    assert!(seen >= 8);
}

#[test]
fn dot_is_stable() {
    let a = lqn(&["dot", &path("n5_example.json"), "--view", "bb", "--weights", "--highlight", "2"]);
    let b = lqn(&["dot", &path("n5_example.json"), "--view", "bb", "--weights", "--highlight", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(lqn(&["dot", &path("n5_example.json"), "--view", "xyz"]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(lqn(&[]).status.code(), Some(1));
    assert_eq!(lqn(&["compute"]).status.code(), Some(1));
    assert_eq!(lqn(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 1, "statistics": "boson", "edges": [{"from": 1, "to": 1, "amp": {"re": 0.9, "im": 0.0}, "color": "up"}]}"#).unwrap();
    let o = lqn(&["compute", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not normalized"));

    // a loose tolerance accepts the same file
    let o = Command::new(env!("CARGO_BIN_EXE_lqn"))
        .args(["compute", bad.to_str().unwrap()])
        .env("LQN_TOL", "0.5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_lqn"))
        .args(["compute", bad.to_str().unwrap()])
        .env("LQN_TOL", "nope")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));

    let parse = dir.path().join("parse.json");
    std::fs::write(&parse, "{\"n\": 1,\n \"statistics\": \"boson\", \"edges\": [{\"from\": 1, \"to\": 1, \"amp\": {\"re\": 1, \"im\": 0}, \"color\": \"left\"}]}").unwrap();
    let o = lqn(&["verify", parse.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn verify_reports_oversized_networks() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ghz11.json");
    let o = lqn(&["design", "ghz", "--n", "11", "--out", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lqn(&["compute", file.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(lqn(&["verify", file.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn design_subcommands() {
    for args in [
        vec!["design", "ghz", "--colors", "udud"],
        vec!["design", "w", "--n", "4", "--form", "ring"],
        vec!["design", "dicke", "--preset", "paper-n5"],
        vec!["design", "dicke", "--n", "6"],
        vec!["design", "cluster4"],
        vec!["design", "tritter"],
        vec!["design", "beamsplitter", "--amps", "0.6,0.8,0.8,-0.6", "--fermion"],
    ] {
        let o = lqn(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        lqn::io::parse_network(&stdout(&o)).unwrap();
    }
    assert_eq!(lqn(&["design", "w", "--n", "4", "--form", "spiral"]).status.code(), Some(1));
    assert_eq!(lqn(&["design", "beamsplitter", "--amps", "1,1,1,1"]).status.code(), Some(2));
}
