//! Run a reduced benchmark with mock models and print per-size means.
//!
//! `cargo run --example run_benchmark -- [config.json]` runs a config file
//! instead.

use kgbench::harness::{aggregate_stats, emit_plot_data, load_config, BenchmarkConfig, RunOptions, Runner};
use kgbench::tasks::TaskRegistry;

fn main() {
    let registry = TaskRegistry::with_defaults();
    let dir = tempfile::tempdir().unwrap();
    let config = match std::env::args().nth(1) {
        Some(path) => load_config(path, &registry).unwrap_or_else(|e| panic!("{e}")),
        None => {
            let mut c = BenchmarkConfig::bundled_default();
            for t in &mut c.tasks {
                t.repetitions = 3;
            }
            c.output.results_path = dir.path().join("results.jsonl");
            c.output.stats_path = dir.path().join("stats");
            c
        }
    };
    let summary = Runner::new(config.clone(), registry).unwrap().run(&RunOptions::default()).unwrap();
    println!("{} records -> {}", summary.records.len(), summary.results_path.display());

    let stats = aggregate_stats(&summary.records);
    for s in stats.iter().filter(|s| matches!(s.score_name.as_str(), "f1" | "persons_relative_error")) {
        println!(
            "{:<14} {:<13} size {} {:<23} mean {:>8.4}  median {:>8.4}",
            s.task_id, s.model_id, s.size_index, s.score_name, s.mean, s.median
        );
    }
    let (stats_csv, points_csv) = emit_plot_data(&stats, &summary.records, &config.output.stats_path).unwrap();
    println!("{}\n{}", stats_csv.display(), points_csv.display());
}
