use std::time::Instant;

use super::BenchmarkConfig;
use crate::connectors::{build_connector, Exchange, GenerationContext, ReplayCache};

pub const PROBE_PROMPT: &str = "Reply with the single word OK.";

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeResult {
    pub model_id: String,
    pub reachable: bool,
    pub latency_ms: u64,
    pub detail: String,
}

/// Sends one tiny prompt to every configured connector.
pub fn probe_models(config: &BenchmarkConfig) -> Vec<ProbeResult> {
    let cache = ReplayCache::new(config.output.cache_dir());
    let conversation = [Exchange::user(PROBE_PROMPT)];
    let context = GenerationContext {
        task_id: "probe".into(),
        oracle_answer: Some("OK".into()),
        ..Default::default()
    };
    config
        .models
        .iter()
        .map(|spec| {
            let started = Instant::now();
            let outcome = build_connector(spec, Some(&cache)).and_then(|c| c.generate_text(&conversation, &context));
            let latency_ms = started.elapsed().as_millis() as u64;
            let (reachable, detail) = match outcome {
                Ok(reply) => (true, reply.text.chars().take(60).collect()),
                Err(e) => (false, e.to_string()),
            };
            ProbeResult {
                model_id: spec.model_id.clone(),
                reachable,
                latency_ms,
                detail,
            }
        })
        .collect()
}
