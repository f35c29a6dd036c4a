use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::{mpsc, Arc};
use std::time::Instant;

use serde_json::Value;

use super::{mix_seed, read_records, BenchmarkConfig, HarnessError, RunRecord};
use crate::connectors::{build_connector, CachedConnector, Connector, ConnectorKind, ReplayCache};
use crate::tasks::{ScoreSet, ScoreValue, Task, TaskRegistry};

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Continue an interrupted results file instead of starting afresh.
    pub resume: Option<PathBuf>,
    /// Force replay mode regardless of the config.
    pub replay: bool,
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub run_id: String,
    pub results_path: PathBuf,
    /// Records appended by this run, in file order.
    pub records: Vec<RunRecord>,
    /// Combinations already present when resuming.
    pub skipped: usize,
}

impl RunSummary {
    pub fn errors(&self) -> usize {
        self.records.iter().filter(|r| r.is_error()).count()
    }
}

struct Cell {
    task: Arc<dyn Task>,
    size_index: usize,
    size_params: Value,
    repetition: usize,
}

pub struct Runner {
    config: BenchmarkConfig,
    registry: TaskRegistry,
    connectors: Vec<Arc<dyn Connector>>,
    describe: BTreeMap<String, BTreeMap<String, Value>>,
}

impl Runner {
    /// Builds one connector per configured model.
    pub fn new(config: BenchmarkConfig, registry: TaskRegistry) -> Result<Self, HarnessError> {
        config.validate(&registry)?;
        let cache = ReplayCache::new(config.output.cache_dir());
        let connectors = config
            .models
            .iter()
            .enumerate()
            .map(|(i, spec)| {
                build_connector(spec, Some(&cache)).map_err(|e| HarnessError::Config {
                    path: format!("models[{i}]"),
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::with_connectors(config, registry, connectors))
    }

    /// Uses the given connectors instead of the configured models.
    pub fn with_connectors(config: BenchmarkConfig, registry: TaskRegistry, connectors: Vec<Arc<dyn Connector>>) -> Self {
        let describe = config
            .models
            .iter()
            .map(|m| (m.model_id.clone(), m.describe()))
            .collect();
        Runner {
            config,
            registry,
            connectors,
            describe,
        }
    }

    pub fn config(&self) -> &BenchmarkConfig {
        &self.config
    }

    fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for t in &self.config.tasks {
            let task = self.registry.get(&t.task_id).expect("validated task id");
            let sizes = task.resolve_sizes(&t.sizes).expect("validated sizes");
            for (i, size_params) in sizes.into_iter().enumerate() {
                for repetition in 1..=t.repetitions {
                    cells.push(Cell {
                        task: task.clone(),
                        size_index: i + 1,
                        size_params: size_params.clone(),
                        repetition,
                    });
                }
            }
        }
        cells
    }

    fn execute(&self, run_id: &str, connector: &dyn Connector, cell: &Cell) -> RunRecord {
        let task_id = cell.task.id().to_string();
        let seed = mix_seed(self.config.seed_base, &task_id, cell.size_index, cell.repetition);
        let started = Instant::now();
        let mut meta = self.describe.get(connector.model_id()).cloned().unwrap_or_default();
        let (prompt, response, scores, error) = match cell.task.prepare(&cell.size_params, seed) {
            Err(e) => (String::new(), String::new(), error_scores(), Some(format!("task: {e}"))),
            Ok(instance) => match cell.task.converse(connector, &instance) {
                Ok(dialog) => {
                    meta.extend(dialog.meta);
                    if dialog.conversation.len() > 2 {
                        meta.insert("turns".into(), Value::from(dialog.conversation.len()));
                    }
                    let scores = cell.task.score(&dialog.response, &instance);
                    (instance.prompt, dialog.response, scores, None)
                }
                Err(e) => {
                    meta.insert("error_kind".into(), Value::from(e.kind()));
                    (instance.prompt, String::new(), error_scores(), Some(e.to_string()))
                }
            },
        };
        RunRecord {
            run_id: run_id.to_string(),
            timestamp_utc: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
            task_id,
            task_version: cell.task.version().to_string(),
            prompt_template_version: cell.task.template_version().to_string(),
            model_id: connector.model_id().to_string(),
            size_index: cell.size_index,
            size_params: cell.size_params.clone(),
            repetition: cell.repetition,
            seed,
            prompt,
            response,
            scores,
            duration_ms: started.elapsed().as_millis() as u64,
            meta,
            error,
        }
    }

    /// Executes every missing (model, task, size, repetition) combination,
    /// appending each record to the results file as soon as it is scored.
    pub fn run(&self, options: &RunOptions) -> Result<RunSummary, HarnessError> {
        let replay = self.config.replay_mode || options.replay;
        let cache = ReplayCache::new(self.config.output.cache_dir());
        let connectors: Vec<Arc<dyn Connector>> = self
            .connectors
            .iter()
            .zip(self.config.models.iter().map(|m| m.kind).chain(std::iter::repeat(ConnectorKind::Oracle)))
            .map(|(c, kind)| -> Arc<dyn Connector> {
                if replay && kind != ConnectorKind::Replay {
                    Arc::new(CachedConnector::new(c.clone(), cache.clone()))
                } else {
                    c.clone()
                }
            })
            .collect();

        let results_path = options.resume.clone().unwrap_or_else(|| self.config.output.results_path.clone());
        let completed = match &options.resume {
            Some(path) if path.exists() => prepare_resume(path)?,
            _ => {
                if let Some(dir) = results_path.parent().filter(|d| !d.as_os_str().is_empty()) {
                    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
                }
                File::create(&results_path).map_err(|e| HarnessError::io(&results_path, e))?;
                BTreeSet::new()
            }
        };
        let file = OpenOptions::new()
            .append(true)
            .open(&results_path)
            .map_err(|e| HarnessError::io(&results_path, e))?;
        let mut out = BufWriter::new(file);

        let run_id = uuid::Uuid::new_v4().to_string();
        let cells = self.cells();
        let mut skipped = 0;
        let mut pending: Vec<Vec<&Cell>> = Vec::with_capacity(connectors.len());
        for c in &connectors {
            let todo: Vec<&Cell> = cells
                .iter()
                .filter(|cell| {
                    let key = (cell.task.id().to_string(), c.model_id().to_string(), cell.size_index, cell.repetition);
                    let done = completed.contains(&key);
                    skipped += usize::from(done);
                    !done
                })
                .collect();
            pending.push(todo);
        }

        let mut written = Vec::new();
        let (tx, rx) = mpsc::channel::<RunRecord>();
        let write_result = std::thread::scope(|scope| {
            let work: Vec<(&Arc<dyn Connector>, Vec<&Cell>)> = connectors.iter().zip(pending).collect();
            if self.config.parallel_models {
                for (connector, todo) in work {
                    let tx = tx.clone();
                    let run_id = &run_id;
                    scope.spawn(move || {
                        for cell in todo {
                            if tx.send(self.execute(run_id, connector.as_ref(), cell)).is_err() {
                                return;
                            }
                        }
                    });
                }
            } else {
                let tx = tx.clone();
                let run_id = &run_id;
                scope.spawn(move || {
                    for (connector, todo) in work {
                        for cell in todo {
                            if tx.send(self.execute(run_id, connector.as_ref(), cell)).is_err() {
                                return;
                            }
                        }
                    }
                });
            }
            drop(tx);
            for record in rx {
                let line = serde_json::to_string(&record).expect("records serialize");
                writeln!(out, "{line}")
                    .and_then(|_| out.flush())
                    .map_err(|e| HarnessError::io(&results_path, e))?;
                written.push(record);
            }
            Ok::<(), HarnessError>(())
        });
        write_result?;

        Ok(RunSummary {
            run_id,
            results_path,
            records: written,
            skipped,
        })
    }
}

fn error_scores() -> ScoreSet {
    let mut s = ScoreSet::new();
    s.insert("error".into(), ScoreValue::Bool(true));
    s
}

/// Drops a partially written last line and returns the completed keys.
fn prepare_resume(path: &Path) -> Result<BTreeSet<(String, String, usize, usize)>, HarnessError> {
    let bytes = fs::read(path).map_err(|e| HarnessError::io(path, e))?;
    if !bytes.is_empty() && !bytes.ends_with(b"\n") {
        let keep = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1);
        let file = OpenOptions::new().write(true).open(path).map_err(|e| HarnessError::io(path, e))?;
        file.set_len(keep as u64).map_err(|e| HarnessError::io(path, e))?;
    }
    let (records, _) = read_records(path)?;
    Ok(records.iter().map(RunRecord::key).collect())
}
