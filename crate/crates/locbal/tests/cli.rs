//! End-to-end checks of the installed binary: exit codes, piping, and
//! byte-level determinism of emitted files.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn locbal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locbal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn locbal_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_locbal"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn example_pipes_into_solve() {
    let example = locbal(&["example"]);
    assert_eq!(example.status.code(), Some(0));
    let instance = stdout(&example);
    assert!(instance.starts_with("{\"n\":5,"));

    let solve = locbal_with_stdin(&["solve", "-"], &instance);
    assert_eq!(solve.status.code(), Some(0));
    let solution: serde_json::Value = serde_json::from_str(&stdout(&solve)).unwrap();
    assert!(solution["report"]["achieved_k"].as_u64().unwrap() <= 2);
    assert_eq!(solution["meta"]["root_strategy"], "min-id");
}

#[test]
fn example_pipes_into_oracle() {
    let instance = stdout(&locbal(&["example"]));
    let oracle = locbal_with_stdin(&["oracle", "-"], &instance);
    assert_eq!(oracle.status.code(), Some(0));
    let text = stdout(&oracle);
    assert!(text.contains("k_min = 2"));
    assert!(text.contains("enumerated = 16"));
}

#[test]
fn missing_file_is_a_data_error() {
    let out = locbal(&["solve", "definitely-missing.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("definitely-missing.json"));
}

#[test]
fn bad_usage_is_exit_two() {
    let out = locbal(&["solve"]);
    assert_eq!(out.status.code(), Some(2));
    let out = locbal(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let instance = stdout(&locbal(&["example"]));
    let out = locbal_with_stdin(&["solve", "-", "--seed", "3"], &instance);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_instance_is_exit_one() {
    let out = locbal_with_stdin(
        &["solve", "-"],
        r#"{"n":3,"g1":[[0,1],[1,2],[2,0]],"g2":[]}"#,
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("g1"));
}

#[test]
fn solve_output_passes_verify() {
    let dir = tempfile::tempdir().unwrap();
    let instance_path = dir.path().join("instance.json");
    let solution_path = dir.path().join("solution.json");
    std::fs::write(&instance_path, stdout(&locbal(&["example"]))).unwrap();

    let solve = locbal(&[
        "solve",
        instance_path.to_str().unwrap(),
        "--out",
        solution_path.to_str().unwrap(),
    ]);
    assert_eq!(solve.status.code(), Some(0));

    let verify = locbal(&[
        "verify",
        instance_path.to_str().unwrap(),
        "--assignment",
        solution_path.to_str().unwrap(),
    ]);
    assert_eq!(verify.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&verify)).unwrap();
    assert!(report["achieved_k"].as_u64().unwrap() <= 2);
}

#[test]
fn verify_rejects_tampered_reports() {
    let dir = tempfile::tempdir().unwrap();
    let instance_path = dir.path().join("instance.json");
    let solution_path = dir.path().join("solution.json");
    std::fs::write(&instance_path, stdout(&locbal(&["example"]))).unwrap();
    let solve = locbal(&["solve", instance_path.to_str().unwrap()]);
    let mut solution: serde_json::Value = serde_json::from_str(&stdout(&solve)).unwrap();
    solution["report"]["achieved_k"] = serde_json::json!(0);
    std::fs::write(
        &solution_path,
        serde_json::to_string_pretty(&solution).unwrap(),
    )
    .unwrap();

    let verify = locbal(&[
        "verify",
        instance_path.to_str().unwrap(),
        "--assignment",
        solution_path.to_str().unwrap(),
    ]);
    assert_eq!(verify.status.code(), Some(1));
}

#[test]
fn gen_pipes_into_solve_and_oracle() {
    let gen = locbal(&["gen", "--n", "9", "--model", "prufer-tree", "--seed", "11"]);
    assert_eq!(gen.status.code(), Some(0));
    let instance = stdout(&gen);

    let solve = locbal_with_stdin(&["solve", "-"], &instance);
    assert_eq!(solve.status.code(), Some(0));
    let oracle = locbal_with_stdin(&["oracle", "-"], &instance);
    assert_eq!(oracle.status.code(), Some(0));

    // the generator honors its component knob through the CLI as well
    let forest = locbal(&[
        "gen",
        "--n",
        "9",
        "--model",
        "uniform-forest",
        "--seed",
        "4",
        "--components",
        "3",
    ]);
    assert_eq!(forest.status.code(), Some(0));
}

#[test]
fn dot_export_is_written_and_stable() {
    let dir = tempfile::tempdir().unwrap();
    let instance_path = dir.path().join("instance.json");
    std::fs::write(&instance_path, stdout(&locbal(&["example"]))).unwrap();
    let dot_a = dir.path().join("a.dot");
    let dot_b = dir.path().join("b.dot");
    for dot in [&dot_a, &dot_b] {
        let out = locbal(&[
            "solve",
            instance_path.to_str().unwrap(),
            "--dot",
            dot.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(&dot_a).unwrap();
    let b = std::fs::read(&dot_b).unwrap();
    assert_eq!(a, b);
    assert!(String::from_utf8_lossy(&a).contains("subgraph cluster_g1"));
}

#[test]
fn experiment_writes_csv_with_expected_shape() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("rows.csv");
    let out = locbal(&[
        "experiment",
        "--count",
        "5",
        "--n",
        "7",
        "--seed",
        "21",
        "--oracle",
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("achieved_k histogram"));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "seed,n,achieved_k,k_min");
    assert_eq!(lines.len(), 6);
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 4);
        assert_eq!(fields[1], "7");
        assert!(!fields[3].is_empty());
    }
}

#[test]
fn seeded_solve_is_reproducible_from_its_own_metadata() {
    let instance = stdout(&locbal(&["example"]));
    let a = locbal_with_stdin(
        &["solve", "-", "--root-strategy", "seeded", "--seed", "123"],
        &instance,
    );
    let b = locbal_with_stdin(
        &["solve", "-", "--root-strategy", "seeded", "--seed", "123"],
        &instance,
    );
    assert_eq!(a.stdout, b.stdout);
    let solution: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(solution["meta"]["seed"], 123);
}
