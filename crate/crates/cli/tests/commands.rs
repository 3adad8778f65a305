use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coarsetiler"))
        .args(args)
        .env_remove("COARSETILER_GROUP")
        .env_remove("COARSETILER_P")
        .env_remove("COARSETILER_CAP_VERTICES")
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn ball_vertex_counts() {
    let out = run(&["ball", "--group", "grigorchuk", "-r", "2"]);
    assert!(out.status.success());
    let ball = stdout_json(&out);
    assert_eq!(ball["vertices"].as_array().unwrap().len(), 11);
    assert_eq!(ball["sphere"].as_array().unwrap().len(), 6);

    let out = run(&["ball", "--group", "grigorchuk", "-r", "0"]);
    let ball = stdout_json(&out);
    assert_eq!(ball["vertices"].as_array().unwrap().len(), 1);
    assert!(ball["edges"].as_array().unwrap().is_empty());
}

#[test]
fn unknown_preset_fails() {
    let out = run(&["ball", "--group", "nosuch", "-r", "1"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("unknown preset"));
}

#[test]
fn vertex_cap_is_enforced_and_env_is_overridden_by_flag() {
    let out = run(&["ball", "--group", "grigorchuk", "-r", "6", "--cap-vertices", "50"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("resource limit"));

    let out = Command::new(env!("CARGO_BIN_EXE_coarsetiler"))
        .args(["ball", "--group", "grigorchuk", "-r", "6"])
        .env("COARSETILER_CAP_VERTICES", "50")
        .output()
        .unwrap();
    assert!(!out.status.success());

    let out = Command::new(env!("CARGO_BIN_EXE_coarsetiler"))
        .args(["ball", "--group", "grigorchuk", "-r", "6", "--cap-vertices", "1000"])
        .env("COARSETILER_CAP_VERTICES", "50")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn solve_exit_codes() {
    let out = run(&["solve", "--group", "grigorchuk", "-r", "6", "-p", "3"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["residual_on_boundary"], Value::Bool(true));

    let dir = tempfile::tempdir().unwrap();
    let toy = dir.path().join("triangle.json");
    std::fs::write(&toy, r#"{"vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]}"#).unwrap();
    let out = run(&["solve", "--toy", path(&toy), "-p", "2"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("UnsolvableOnClosedGraph"));

    let out = run(&["solve", "--toy", path(&toy), "-p", "3"]);
    assert!(out.status.success());
    assert!(stdout_json(&out)["residual"].as_array().unwrap().is_empty());

    let out = run(&["solve", "--group", "grigorchuk", "-r", "4", "-p", "3", "--c", "zero"]);
    assert!(out.status.success());
    assert!(stdout_json(&out)["psi"]["entries"].as_array().unwrap().is_empty());
}

#[test]
fn solve_reads_a_chain_file() {
    let dir = tempfile::tempdir().unwrap();
    let toy = dir.path().join("path.json");
    std::fs::write(&toy, r#"{"vertices": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
    let c = dir.path().join("c.json");
    std::fs::write(&c, r#"{"p": 5, "entries": [[0, 1], [2, 4]]}"#).unwrap();
    let out = run(&["solve", "--toy", path(&toy), "-p", "5", "--c", path(&c)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let entries: Vec<(usize, u32)> = serde_json::from_value(stdout_json(&out)["psi"]["entries"].clone()).unwrap();
    // ∂ψ = c: 0 -> 1 carries -1 = 4, 1 -> 2 carries 4.
    assert_eq!(entries, vec![(0, 4), (1, 4)]);
}

#[test]
fn tiles_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["tiles", "--group", "grigorchuk", "-r", "8", "-p", "3", "--out", path(dir.path())]);
    assert!(out.status.success(), "{}", stderr(&out));
    let tiles: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("tiles.json")).unwrap()).unwrap();
    assert!(tiles["types"].as_array().unwrap().len() <= 1296);
    let svg = std::fs::read_to_string(dir.path().join("tiles.svg")).unwrap();
    assert!(svg.starts_with("<svg"));

    let patch = dir.path().join("patch.json");
    let out = run(&["verify", path(&patch), "-p", "3"]);
    assert!(out.status.success(), "{}", stderr(&out));

    let out = run(&["verify", path(&patch), "-p", "5"]);
    assert!(!out.status.success());

    // Turn one bump into a dent: the patch still parses but fails.
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&patch).unwrap()).unwrap();
    let face = doc["types"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .flat_map(|t| t.as_array_mut().unwrap().iter_mut())
        .find(|f| f["count"] != 0)
        .unwrap();
    face["polarity"] = Value::String(if face["polarity"] == "bump" { "dent" } else { "bump" }.into());
    std::fs::write(&patch, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = run(&["verify", path(&patch)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!stdout_json(&out)["matching"].as_array().unwrap().is_empty());
}

#[test]
fn malformed_patch_reports_path() {
    let dir = tempfile::tempdir().unwrap();
    let patch = dir.path().join("bad.json");
    std::fs::write(
        &patch,
        r#"{"p": 3, "genset": ["s"], "inverses": ["s"], "types": [[{"gen": "s", "polarity": "sideways", "count": 1}]],
            "assignment": [], "graph": {"vertices": 0, "edges": []}, "interior": []}"#,
    )
    .unwrap();
    let out = run(&["verify", path(&patch), "-p", "3"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("types[0][0].polarity"), "{}", stderr(&out));
}

#[test]
fn certify_verdicts() {
    let out = run(&["certify", "--group", "grigorchuk", "-p", "3", "--levels", "1..3"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["verdict"], "PASS");
    let orders: Vec<u64> = report["levels"].as_array().unwrap().iter().map(|l| l["order"].as_u64().unwrap()).collect();
    assert_eq!(orders, vec![2, 8, 128]);

    let out = run(&["certify", "--group", "fabrykowski-gupta", "-p", "2", "--levels", "1..2"]);
    assert!(out.status.success());

    let out = run(&["certify", "--group", "grigorchuk", "-p", "2", "--levels", "1..1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["verdict"], "FAIL");

    let out = run(&["certify", "--group", "grigorchuk", "-p", "3", "--levels", "1..2", "--cap-elements", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["verdict"], "INCOMPLETE");
}

#[test]
fn dumped_preset_loads_as_spec() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["grigorchuk", "fabrykowski-gupta"] {
        let out = run(&["dump-preset", name]);
        assert!(out.status.success());
        let file = dir.path().join(format!("{name}.json"));
        std::fs::write(&file, &out.stdout).unwrap();
        let from_file = run(&["ball", "--spec", path(&file), "-r", "3"]);
        let from_name = run(&["ball", "--group", name, "-r", "3"]);
        assert!(from_file.status.success(), "{}", stderr(&from_file));
        assert_eq!(from_file.stdout, from_name.stdout);
    }
}

#[test]
fn outputs_are_deterministic_and_round_trip() {
    let runs: [&[&str]; 4] = [
        &["ball", "--group", "fabrykowski-gupta", "-r", "4"],
        &["solve", "--group", "grigorchuk", "-r", "5", "-p", "5"],
        &["tiles", "--group", "grigorchuk", "-r", "5", "-p", "2"],
        &["certify", "--group", "fabrykowski-gupta", "-p", "2", "--levels", "1..2"],
    ];
    for args in runs {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let value: Value = serde_json::from_slice(&a.stdout).unwrap();
        let mut again = serde_json::to_string_pretty(&value).unwrap();
        again.push('\n');
        assert_eq!(again.as_bytes(), &a.stdout[..], "{args:?}");
    }

    let (x, y) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&x, &y] {
        assert!(run(&["tiles", "--group", "grigorchuk", "-r", "6", "-p", "3", "--out", path(dir.path())]).status.success());
    }
    for file in ["tiles.json", "patch.json", "tiles.svg"] {
        assert_eq!(std::fs::read(x.path().join(file)).unwrap(), std::fs::read(y.path().join(file)).unwrap());
    }
}

#[test]
fn export_dot() {
    let out = run(&["export-dot", "--group", "grigorchuk", "-r", "2"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph ball"));
    let ball = stdout_json(&run(&["ball", "--group", "grigorchuk", "-r", "2"]));
    assert_eq!(dot.matches(" -> ").count(), ball["edges"].as_array().unwrap().len());
}
