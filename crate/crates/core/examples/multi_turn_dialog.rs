//! A task that asks again when the first answer contains no Turtle.

use std::sync::Arc;

use kgbench::connectors::{Connector, ConnectorError, Exchange, GenerationContext, ScriptedConnector};
use kgbench::harness::{BenchmarkConfig, RunOptions, Runner};
use kgbench::rdf::{extract_turtle_candidate, salvage_parse_turtle};
use kgbench::tasks::{Dialog, FactExtractTask, ScoreSet, Task, TaskError, TaskInstance, TaskRegistry};
use serde_json::Value;

/// Fact extraction with one follow-up turn.
struct PatientFactExtract(FactExtractTask);

impl Task for PatientFactExtract {
    fn id(&self) -> &str {
        "fact-extract-2turn"
    }
    fn version(&self) -> &str {
        "1.0.0"
    }
    fn template_version(&self) -> &str {
        self.0.template_version()
    }
    fn description(&self) -> &str {
        "fact extraction with a reminder when the answer has no Turtle"
    }
    fn resolve_sizes(&self, sizes: &[Value]) -> Result<Vec<Value>, TaskError> {
        self.0.resolve_sizes(sizes)
    }
    fn prepare(&self, size: &Value, seed: u64) -> Result<TaskInstance, TaskError> {
        let mut inst = self.0.prepare(size, seed)?;
        inst.task_id = self.id().into();
        Ok(inst)
    }
    fn score(&self, response: &str, instance: &TaskInstance) -> ScoreSet {
        self.0.score(response, instance)
    }

    fn converse(&self, connector: &dyn Connector, instance: &TaskInstance) -> Result<Dialog, ConnectorError> {
        let context = GenerationContext::for_instance(instance);
        let mut conversation = vec![Exchange::user(&instance.prompt)];
        let mut reply = connector.generate_text(&conversation, &context)?;
        conversation.push(Exchange::assistant(&reply.text));
        if salvage_parse_turtle(&extract_turtle_candidate(&reply.text)).0.is_empty() {
            conversation.push(Exchange::user("Please answer with the Turtle document only."));
            reply = connector.generate_text(&conversation, &context)?;
            conversation.push(Exchange::assistant(&reply.text));
        }
        Ok(Dialog {
            conversation,
            response: reply.text,
            meta: reply.meta,
        })
    }
}

fn main() {
    let mut registry = TaskRegistry::new();
    registry.register(Arc::new(PatientFactExtract(FactExtractTask::bundled())));

    // Chatty on the first turn, correct after the reminder.
    let model = ScriptedConnector::from_fn("hesitant", |conv, ctx| {
        if conv.len() == 1 {
            "I would be happy to help with that factsheet!".to_string()
        } else {
            ctx.oracle_answer.clone().unwrap_or_default()
        }
    });

    let dir = tempfile::tempdir().unwrap();
    let config_json = serde_json::json!({
        "models": [{ "model_id": "hesitant", "kind": "oracle" }],
        "tasks": [{ "task_id": "fact-extract-2turn", "repetitions": 2 }],
        "seed_base": 7,
        "output": { "results_path": dir.path().join("r.jsonl"), "stats_path": dir.path().join("s") }
    });
    let config = BenchmarkConfig::from_json(&config_json.to_string(), &registry).unwrap();
    let runner = Runner::with_connectors(config, registry, vec![Arc::new(model)]);
    for r in runner.run(&RunOptions::default()).unwrap().records {
        println!("rep {} turns {} f1 {}", r.repetition, r.meta["turns"], r.scores["f1"].as_f64());
    }
}
