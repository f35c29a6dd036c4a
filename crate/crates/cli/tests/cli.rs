use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::json;

fn kgbench(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgbench"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, models: serde_json::Value) {
    let config = json!({
        "models": models,
        "tasks": [
            { "task_id": "turtle-fix", "repetitions": 2 },
            { "task_id": "synthetic-gen", "sizes": [1, 2], "repetitions": 1 }
        ],
        "seed_base": 3,
        "output": { "results_path": "out/results.jsonl", "stats_path": "out/stats" }
    });
    fs::write(dir.join("config.json"), config.to_string()).unwrap();
}

#[test]
fn run_rescore_stats_round() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), json!([{ "model_id": "o", "kind": "oracle" }]));
    let out = kgbench(dir.path(), &["run", "--config", "config.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let results = fs::read_to_string(dir.path().join("out/results.jsonl")).unwrap();
    assert_eq!(results.lines().count(), 4);
    assert!(dir.path().join("out/stats/stats.csv").exists());

    let out = kgbench(dir.path(), &["rescore", "--results", "out/results.jsonl", "--out", "out/rescored.jsonl"]);
    assert!(out.status.success());
    let out = kgbench(dir.path(), &["stats", "--results", "out/rescored.jsonl", "--out-dir", "again"]);
    assert!(out.status.success());
    let stats = fs::read_to_string(dir.path().join("again/stats.csv")).unwrap();
    assert!(stats.starts_with("task_id,model_id,size_index,score_name,n,mean,median,stddev,min,max\n"));
}

#[test]
fn resume_flag_completes_a_partial_file() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), json!([{ "model_id": "o", "kind": "oracle" }]));
    assert!(kgbench(dir.path(), &["run", "--config", "config.json"]).status.success());
    let path = dir.path().join("out/results.jsonl");
    let text = fs::read_to_string(&path).unwrap();
    let first = text.lines().next().unwrap();
    fs::write(&path, format!("{first}\n{{\"run_id\":")).unwrap();
    let out = kgbench(dir.path(), &["run", "--config", "config.json", "--resume", "out/results.jsonl"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("3 records written"));
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 4);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.json"), r#"{"models": [], "tasks": [], "seed_base": 1, "output": {}}"#).unwrap();
    assert_eq!(kgbench(dir.path(), &["run", "--config", "bad.json"]).status.code(), Some(1));
    assert_eq!(kgbench(dir.path(), &["run", "--config", "missing.json"]).status.code(), Some(1));
    assert_eq!(
        kgbench(dir.path(), &["stats", "--results", "missing.jsonl", "--out-dir", "x"]).status.code(),
        Some(2)
    );

    write_config(
        dir.path(),
        json!([
            { "model_id": "o", "kind": "oracle" },
            { "model_id": "remote", "kind": "http-chat", "endpoint": "http://127.0.0.1:9/v1", "api_key_env": "KGBENCH_CLI_TEST_UNSET" }
        ]),
    );
    let out = kgbench(dir.path(), &["models", "probe", "--config", "config.json"]);
    assert_eq!(out.status.code(), Some(3));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("o ") && stdout.contains("FAILED"), "{stdout}");
}

#[test]
fn tasks_list_names_all_tasks() {
    let dir = tempfile::tempdir().unwrap();
    let out = kgbench(dir.path(), &["tasks", "list"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    for id in ["turtle-fix", "fact-extract", "synthetic-gen"] {
        assert!(stdout.contains(id), "{stdout}");
    }
}
