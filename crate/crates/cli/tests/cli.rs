//! End-to-end tests of the command-line interface: output shapes,
//! exit codes, stdout/stderr separation, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fano-designs"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 stderr")
}

fn tmp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("fano-designs-test-{}-{name}", std::process::id()))
}

/// Writes the canonical design of a type to a temp file and returns
/// the path.
fn built(t: &str) -> PathBuf {
    let path = tmp_path(&format!("{t}.json"));
    let out = run(&["build", t, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "build {t}: {}", stderr(&out));
    path
}

#[test]
fn build_classify_round_trip() {
    let expected = [
        ("C1", "centers=15 lines=35"),
        ("C2", "centers=3 lines=19"),
        ("C3", "centers=1 lines=11"),
        ("C4", "centers=1 lines=7"),
        ("NC", "centers=0 lines=7"),
    ];
    for (t, invariants) in expected {
        let path = tmp_path(&format!("round-{t}.json"));
        let out = run(&["build", t, "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
        assert_eq!(stdout(&out).trim(), invariants, "invariant line for {t}");
        let cls = run(&["classify", path.to_str().unwrap()]);
        assert!(cls.status.success());
        assert_eq!(stdout(&cls).trim(), t);
        let _ = std::fs::remove_file(path);
    }
}

#[test]
fn build_stdout_carries_json_and_stderr_the_invariants() {
    let out = run(&["build", "C4"]);
    assert!(out.status.success());
    let design: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("design JSON");
    assert_eq!(design["n"], 15);
    let blocks = design["blocks"].as_array().expect("blocks array");
    assert_eq!(blocks.len(), 15);
    let first: Vec<u64> = blocks[0]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(first, (1..=8).collect::<Vec<u64>>());
    assert_eq!(stderr(&out).trim(), "centers=1 lines=7");
}

#[test]
fn type_token_is_case_insensitive() {
    let out = run(&["build", "nc"]);
    assert!(out.status.success());
    assert_eq!(stderr(&out).trim(), "centers=0 lines=7");
}

#[test]
fn aut_report_for_c4() {
    let path = built("C4");
    let out = run(&["aut", path.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("report JSON");
    assert_eq!(report["order"], 168);
    assert!(!report["generators"].as_array().unwrap().is_empty());
    let sizes: Vec<usize> = report["point_orbits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o.as_array().unwrap().len())
        .collect();
    assert_eq!(sizes, vec![8, 7]);
    let sizes: Vec<usize> = report["block_orbits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o.as_array().unwrap().len())
        .collect();
    assert_eq!(sizes, vec![14, 1]);
    assert!(stderr(&out).contains("flag-transitive: false"));
    let _ = std::fs::remove_file(path);
}

#[test]
fn aut_report_for_c1_is_flag_transitive() {
    let path = built("C1");
    let out = run(&["aut", path.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("report JSON");
    assert_eq!(report["order"], 20160);
    assert_eq!(report["name"], "GL(4,2)");
    assert!(stderr(&out).contains("flag-transitive: true"));
    let _ = std::fs::remove_file(path);
}

#[test]
fn aut_emit_variants() {
    let path = built("C4");
    let gens = run(&["aut", path.to_str().unwrap(), "--emit", "generators"]);
    assert!(gens.status.success());
    let gens: Vec<String> = serde_json::from_str(&stdout(&gens)).expect("string array");
    assert!(!gens.is_empty());
    assert!(gens.iter().all(|g| g.starts_with('(')));

    let elems = run(&["aut", path.to_str().unwrap(), "--emit", "elements"]);
    assert!(elems.status.success());
    let elems: Vec<String> = serde_json::from_str(&stdout(&elems)).expect("string array");
    assert_eq!(elems.len(), 168);
    assert!(elems.contains(&"()".to_string()), "identity present");
    let _ = std::fs::remove_file(path);
}

#[test]
fn orbits_command() {
    let path = built("C3");
    let out = run(&["orbits", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("orbit JSON");
    let sizes = |key: &str| -> Vec<usize> {
        v[key].as_array()
            .unwrap()
            .iter()
            .map(|o| o.as_array().unwrap().len())
            .collect()
    };
    assert_eq!(sizes("point_orbits"), vec![8, 6, 1]);
    assert_eq!(sizes("block_orbits"), vec![8, 6, 1]);
    let _ = std::fs::remove_file(path);
}

#[test]
fn export_matrix_text_and_json() {
    let path = built("C4");
    let text = run(&["export", path.to_str().unwrap(), "--matrix", "--format", "text"]);
    assert!(text.status.success());
    let grid = stdout(&text);
    let rows: Vec<&str> = grid.lines().collect();
    assert_eq!(rows.len(), 15);
    assert_eq!(rows[0], "1 1 1 1 1 1 1 1 0 0 0 0 0 0 0");
    for row in &rows {
        let ones = row.split(' ').filter(|c| *c == "1").count();
        assert_eq!(ones, 8, "each block has eight points");
    }

    let json = run(&["export", path.to_str().unwrap(), "--matrix"]);
    assert!(json.status.success());
    let matrix: Vec<Vec<u8>> = serde_json::from_str(&stdout(&json)).expect("matrix JSON");
    assert_eq!(matrix.len(), 15);
    let from_text: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| r.split(' ').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(matrix, from_text, "text grid is derived from the JSON matrix");
    let _ = std::fs::remove_file(path);
}

#[test]
fn verify_scopes_pass() {
    let fano = run(&["verify", "fano"]);
    assert!(fano.status.success());
    assert!(stdout(&fano).contains("overall: PASS"));

    let json = run(&["verify", "pyramidal", "--format", "json"]);
    assert!(json.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).expect("report JSON");
    assert_eq!(v["overall"], true);
    assert_eq!(v["scope"], "pyramidal");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn verify_all_is_the_acceptance_gate() {
    let out = run(&["verify"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("overall: PASS"));
    assert!(text.contains("scope all"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn exit_codes() {
    let malformed = tmp_path("malformed.json");
    std::fs::write(&malformed, "not json").unwrap();
    let out = run(&["classify", malformed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("malformed JSON"));

    let invalid = tmp_path("invalid.json");
    let mut blocks: Vec<Vec<u8>> = vec![(1..=8).collect()];
    for extra in 9..=15 {
        blocks.push((1..=7).chain([extra]).collect());
    }
    for start in 2..=8 {
        blocks.push((start..start + 8).collect());
    }
    std::fs::write(
        &invalid,
        serde_json::to_string(&serde_json::json!({"n": 15, "blocks": blocks})).unwrap(),
    )
    .unwrap();
    let out = run(&["classify", invalid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("blocks"), "names the failing pair");

    let out = run(&["classify", tmp_path("absent.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["build", "C9"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    let c4 = built("C4");
    let out = run(&["export", c4.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "--matrix is required");
    let out = run(&["aut", c4.to_str().unwrap(), "--emit", "everything"]);
    assert_eq!(out.status.code(), Some(2));

    let _ = std::fs::remove_file(malformed);
    let _ = std::fs::remove_file(invalid);
    let _ = std::fs::remove_file(c4);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = run(&["build", "C2"]);
    let b = run(&["build", "C2"]);
    assert_eq!(a.stdout, b.stdout);

    let path = built("C2");
    let a = run(&["aut", path.to_str().unwrap(), "--emit", "generators"]);
    let b = run(&["aut", path.to_str().unwrap(), "--emit", "generators"]);
    assert_eq!(a.stdout, b.stdout);
    let _ = std::fs::remove_file(path);
}
