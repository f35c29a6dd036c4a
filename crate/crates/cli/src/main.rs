use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kgbench::harness::{
    aggregate_stats, emit_plot_data, load_config, probe_models, read_records, rescore_file, HarnessError, RunOptions,
    Runner,
};
use kgbench::tasks::TaskRegistry;

#[derive(Parser)]
#[command(name = "kgbench", version, about = "Knowledge-graph-engineering benchmark for text-generation models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every configured model × task × size × repetition.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Serve responses from the replay cache, recording misses.
        #[arg(long)]
        replay: bool,
        /// Continue an interrupted results file.
        #[arg(long, value_name = "RESULTS_JSONL")]
        resume: Option<PathBuf>,
    },
    /// Re-evaluate stored responses with the current scorers.
    Rescore {
        #[arg(long)]
        results: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Aggregate a results file into stats.csv and points.csv.
    Stats {
        #[arg(long)]
        results: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    Tasks {
        #[command(subcommand)]
        command: TasksCommand,
    },
    Models {
        #[command(subcommand)]
        command: ModelsCommand,
    },
}

#[derive(Subcommand)]
enum TasksCommand {
    /// List registered tasks.
    List,
}

#[derive(Subcommand)]
enum ModelsCommand {
    /// Send one tiny prompt to each configured model.
    Probe {
        #[arg(long)]
        config: PathBuf,
    },
}

const CONFIG: u8 = 1;
const IO: u8 = 2;
const PROBE: u8 = 3;

fn fail(e: &HarnessError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(match e {
        HarnessError::Config { .. } => CONFIG,
        HarnessError::Io { .. } => IO,
    })
}

fn config_fail(e: &HarnessError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(CONFIG)
}

fn write_stats(results: &Path, out_dir: &Path) -> Result<(), HarnessError> {
    let (records, errors) = read_records(results)?;
    for e in &errors {
        eprintln!("warning: {}: {e}", results.display());
    }
    let stats = aggregate_stats(&records);
    let (s, p) = emit_plot_data(&stats, &records, out_dir)?;
    println!("{} stat rows -> {}", stats.len(), s.display());
    println!("{} records -> {}", records.len(), p.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let registry = TaskRegistry::with_defaults();
    match cli.command {
        Command::Run { config, replay, resume } => {
            let config = match load_config(&config, &registry) {
                Ok(c) => c,
                Err(e) => return config_fail(&e),
            };
            let stats_dir = config.output.stats_path.clone();
            let runner = match Runner::new(config, registry) {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            let summary = match runner.run(&RunOptions { resume, replay }) {
                Ok(s) => s,
                Err(e) => return fail(&e),
            };
            println!(
                "run {}: {} records written ({} connector errors, {} already present) -> {}",
                summary.run_id,
                summary.records.len(),
                summary.errors(),
                summary.skipped,
                summary.results_path.display()
            );
            if let Err(e) = write_stats(&summary.results_path, &stats_dir) {
                return fail(&e);
            }
            ExitCode::SUCCESS
        }
        Command::Rescore { results, out } => match rescore_file(&results, &out, &registry) {
            Ok(report) => {
                for e in &report.errors {
                    eprintln!("warning: {}: {e}", results.display());
                }
                println!("{} records rescored -> {}", report.records.len(), out.display());
                ExitCode::SUCCESS
            }
            Err(e) => fail(&e),
        },
        Command::Stats { results, out_dir } => match write_stats(&results, &out_dir) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&e),
        },
        Command::Tasks {
            command: TasksCommand::List,
        } => {
            for task in registry.iter() {
                let sizes = task.resolve_sizes(&[]).map_or(0, |s| s.len());
                println!(
                    "{:<14} v{:<6} {:<18} {} default size(s)  {}",
                    task.id(),
                    task.version(),
                    task.template_version(),
                    sizes,
                    task.description()
                );
            }
            ExitCode::SUCCESS
        }
        Command::Models {
            command: ModelsCommand::Probe { config },
        } => {
            let config = match load_config(&config, &registry) {
                Ok(c) => c,
                Err(e) => return config_fail(&e),
            };
            let results = probe_models(&config);
            for r in &results {
                let status = if r.reachable { "ok" } else { "FAILED" };
                println!("{:<24} {:<6} {:>6} ms  {}", r.model_id, status, r.latency_ms, r.detail);
            }
            if results.iter().all(|r| r.reachable) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(PROBE)
            }
        }
    }
}
