//! Benchmark tasks: prompt generation and response scoring.

pub mod fact_extract;
pub mod synthetic_gen;
pub mod turtle_fix;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::connectors::{Connector, ConnectorError, Exchange, GenerationContext};
use crate::rdf::{extract_turtle_candidate, normalize, parse_turtle_strict, salvage_report, triple_set_scores, DiffScores, Graph};

pub use fact_extract::{load_asset, AssetError, FactExtractTask, FactSheetAsset};
pub use synthetic_gen::{count_entities, size_schedule, SynthGenSize, SyntheticGenTask, DEFAULT_SIZE_COUNT};
pub use turtle_fix::{
    apply_inverse, generate_reference, inject_errors, ErrorKind, InjectedError, TurtleFixInstance, TurtleFixSize,
    TurtleFixTask,
};

#[derive(Debug, thiserror::Error)]
pub enum TaskError {
    #[error("size error: {0}")]
    Size(String),
    #[error("range error: {0}")]
    Range(String),
    #[error(transparent)]
    Asset(#[from] AssetError),
}

/// A single score value: numbers and flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScoreValue {
    Bool(bool),
    Count(u64),
    Number(f64),
}

impl ScoreValue {
    pub fn as_f64(self) -> f64 {
        match self {
            ScoreValue::Bool(b) => f64::from(u8::from(b)),
            ScoreValue::Count(n) => n as f64,
            ScoreValue::Number(x) => x,
        }
    }
}

impl From<bool> for ScoreValue {
    fn from(b: bool) -> Self {
        ScoreValue::Bool(b)
    }
}

impl From<f64> for ScoreValue {
    fn from(x: f64) -> Self {
        ScoreValue::Number(x)
    }
}

impl From<usize> for ScoreValue {
    fn from(n: usize) -> Self {
        ScoreValue::Count(n as u64)
    }
}

pub type ScoreSet = BTreeMap<String, ScoreValue>;

/// One generated challenge.
#[derive(Debug, Clone)]
pub struct TaskInstance {
    pub task_id: String,
    pub seed: u64,
    pub size_params: Value,
    pub prompt: String,
    /// A perfect answer, handed to oracle connectors out of band.
    pub oracle_answer: String,
    /// Scoring target for tasks that compare against a graph.
    pub reference: Option<Graph>,
}

/// Final state of a (possibly multi-turn) exchange with a model.
#[derive(Debug, Clone)]
pub struct Dialog {
    pub conversation: Vec<Exchange>,
    pub response: String,
    pub meta: BTreeMap<String, Value>,
}

pub trait Task: Send + Sync {
    fn id(&self) -> &str;
    fn version(&self) -> &str;
    fn template_version(&self) -> &str;
    fn description(&self) -> &str;

    /// Validates configured sizes and returns one size_params value per size
    /// index. An empty list selects the task's default sizes.
    fn resolve_sizes(&self, sizes: &[Value]) -> Result<Vec<Value>, TaskError>;

    fn prepare(&self, size_params: &Value, seed: u64) -> Result<TaskInstance, TaskError>;

    fn score(&self, response: &str, instance: &TaskInstance) -> ScoreSet;

    /// Runs the exchange with a model. Single-turn by default; tasks can
    /// override this to send follow-up prompts.
    fn converse(&self, connector: &dyn Connector, instance: &TaskInstance) -> Result<Dialog, ConnectorError> {
        let mut conversation = vec![Exchange::user(&instance.prompt)];
        let context = GenerationContext::for_instance(instance);
        let reply = connector.generate_text(&conversation, &context)?;
        conversation.push(Exchange::assistant(&reply.text));
        Ok(Dialog {
            conversation,
            response: reply.text,
            meta: reply.meta,
        })
    }
}

/// Scores shared by the Turtle-producing tasks.
#[derive(Debug, Clone)]
pub struct TurtleAnswerScores {
    pub diff: DiffScores,
    pub answer_parsable: bool,
    pub failed_statements: usize,
    pub graph: Graph,
}

/// Extract, salvage-parse and compare a Turtle answer with a reference.
pub fn score_turtle_answer(response: &str, reference: &Graph) -> TurtleAnswerScores {
    let candidate_text = extract_turtle_candidate(response);
    let report = salvage_report(&candidate_text);
    let answer_parsable = parse_turtle_strict(&candidate_text).is_ok();
    let diff = triple_set_scores(&normalize(&report.graph), &normalize(reference));
    TurtleAnswerScores {
        diff,
        answer_parsable,
        failed_statements: report.failed_statements(),
        graph: report.graph,
    }
}

/// Looks up tasks by id.
#[derive(Clone, Default)]
pub struct TaskRegistry {
    tasks: BTreeMap<String, Arc<dyn Task>>,
}

impl TaskRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// The three built-in tasks with their bundled assets.
    pub fn with_defaults() -> Self {
        let mut r = Self::new();
        r.register(Arc::new(TurtleFixTask));
        r.register(Arc::new(FactExtractTask::bundled()));
        r.register(Arc::new(SyntheticGenTask));
        r
    }

    pub fn register(&mut self, task: Arc<dyn Task>) {
        self.tasks.insert(task.id().to_string(), task);
    }

    pub fn get(&self, id: &str) -> Option<Arc<dyn Task>> {
        self.tasks.get(id).cloned()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.tasks.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn Task>> {
        self.tasks.values()
    }
}

pub(crate) fn fill_template(template: &str, values: &[(&str, &str)]) -> String {
    let mut out = template.to_string();
    for (key, value) in values {
        out = out.replace(&format!("{{{{{key}}}}}"), value);
    }
    out
}
