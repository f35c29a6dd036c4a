//! Benchmark configuration, execution, persistence and statistics.

mod config;
mod probe;
mod record;
mod rescore;
mod runner;
mod stats;

use std::path::PathBuf;

pub use config::{load_config, BenchmarkConfig, OutputConfig, TaskConfig};
pub use probe::{probe_models, ProbeResult};
pub use record::{mix_seed, read_records, RecordError, RunRecord};
pub use rescore::{rescore, rescore_file, RescoreReport};
pub use runner::{RunOptions, RunSummary, Runner};
pub use stats::{aggregate_stats, emit_plot_data, StatRow, POINTS_HEADER, STATS_HEADER};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl HarnessError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }
}
