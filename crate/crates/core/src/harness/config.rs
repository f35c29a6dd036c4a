use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::HarnessError;
use crate::connectors::{ConnectorKind, ConnectorSpec};
use crate::tasks::TaskRegistry;

const DEFAULT_CONFIG: &str = include_str!("../../assets/configs/default.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskConfig {
    pub task_id: String,
    /// Task-specific size descriptions; empty selects the task defaults.
    #[serde(default)]
    pub sizes: Vec<Value>,
    pub repetitions: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub results_path: PathBuf,
    /// Directory receiving stats.csv and points.csv.
    pub stats_path: PathBuf,
    /// Replay cache directory; defaults to `cache/` next to the results.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<PathBuf>,
}

impl OutputConfig {
    pub fn cache_dir(&self) -> PathBuf {
        self.cache_dir.clone().unwrap_or_else(|| {
            self.results_path
                .parent()
                .map(|p| p.join("cache"))
                .unwrap_or_else(|| PathBuf::from("cache"))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkConfig {
    pub models: Vec<ConnectorSpec>,
    pub tasks: Vec<TaskConfig>,
    pub seed_base: u64,
    pub output: OutputConfig,
    #[serde(default)]
    pub replay_mode: bool,
    /// Run different models on separate threads.
    #[serde(default)]
    pub parallel_models: bool,
}

fn config_error(path: impl Into<String>, message: impl Into<String>) -> HarnessError {
    HarnessError::Config {
        path: path.into(),
        message: message.into(),
    }
}

impl BenchmarkConfig {
    /// The three-model, three-task setup with 20 repetitions per size.
    pub fn bundled_default() -> Self {
        Self::from_json(DEFAULT_CONFIG, &TaskRegistry::with_defaults()).expect("bundled config is valid")
    }

    pub fn bundled_default_json() -> &'static str {
        DEFAULT_CONFIG
    }

    pub fn from_json(text: &str, registry: &TaskRegistry) -> Result<Self, HarnessError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: BenchmarkConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            config_error(if path == "." { String::new() } else { path }, e.into_inner().to_string())
        })?;
        config.validate(registry)?;
        Ok(config)
    }

    pub fn validate(&self, registry: &TaskRegistry) -> Result<(), HarnessError> {
        let mut model_ids = BTreeSet::new();
        for (i, spec) in self.models.iter().enumerate() {
            spec.validate().map_err(|m| config_error(format!("models[{i}]"), m))?;
            if !model_ids.insert(&spec.model_id) {
                return Err(config_error(
                    format!("models[{i}].model_id"),
                    format!("duplicate model_id `{}`", spec.model_id),
                ));
            }
        }
        let mut task_ids = BTreeSet::new();
        for (i, task) in self.tasks.iter().enumerate() {
            let Some(t) = registry.get(&task.task_id) else {
                return Err(config_error(
                    format!("tasks[{i}].task_id"),
                    format!("unknown task_id `{}`", task.task_id),
                ));
            };
            if !task_ids.insert(&task.task_id) {
                return Err(config_error(
                    format!("tasks[{i}].task_id"),
                    format!("duplicate task_id `{}`", task.task_id),
                ));
            }
            if task.repetitions == 0 {
                return Err(config_error(format!("tasks[{i}].repetitions"), "repetitions must be at least 1"));
            }
            t.resolve_sizes(&task.sizes)
                .map_err(|e| config_error(format!("tasks[{i}].sizes"), e.to_string()))?;
        }
        Ok(())
    }

    /// Number of records an uninterrupted run produces.
    pub fn expected_records(&self, registry: &TaskRegistry) -> usize {
        let per_model: usize = self
            .tasks
            .iter()
            .map(|t| {
                let sizes = registry
                    .get(&t.task_id)
                    .and_then(|task| task.resolve_sizes(&t.sizes).ok())
                    .map_or(0, |s| s.len());
                sizes * t.repetitions
            })
            .sum();
        per_model * self.models.len()
    }

    pub fn uses_replay_connectors(&self) -> bool {
        self.models.iter().any(|m| m.kind == ConnectorKind::Replay)
    }
}

pub fn load_config(path: impl AsRef<Path>, registry: &TaskRegistry) -> Result<BenchmarkConfig, HarnessError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    BenchmarkConfig::from_json(&text, registry)
}
