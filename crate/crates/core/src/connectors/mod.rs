//! Model connectors: one `generate_text` contract over live chat endpoints
//! and deterministic stand-ins.

mod http;
mod mock;
mod replay;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::tasks::TaskInstance;

pub use http::{HttpChatConnector, Sleeper};
pub use mock::{ConstantConnector, OracleConnector, Script, ScriptSpec, ScriptedConnector};
pub use replay::{conversation_hash, CacheEntry, CachedConnector, ReplayCache, ReplayConnector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    System,
    User,
    Assistant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exchange {
    pub role: Role,
    pub content: String,
}

impl Exchange {
    pub fn system(content: impl Into<String>) -> Self {
        Exchange {
            role: Role::System,
            content: content.into(),
        }
    }

    pub fn user(content: impl Into<String>) -> Self {
        Exchange {
            role: Role::User,
            content: content.into(),
        }
    }

    pub fn assistant(content: impl Into<String>) -> Self {
        Exchange {
            role: Role::Assistant,
            content: content.into(),
        }
    }
}

/// Out-of-band information the harness passes alongside a conversation.
/// Only test doubles look at it.
#[derive(Debug, Clone, Default)]
pub struct GenerationContext {
    pub task_id: String,
    pub size_params: Value,
    pub oracle_answer: Option<String>,
}

impl GenerationContext {
    pub fn for_instance(instance: &TaskInstance) -> Self {
        GenerationContext {
            task_id: instance.task_id.clone(),
            size_params: instance.size_params.clone(),
            oracle_answer: Some(instance.oracle_answer.clone()),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Reply {
    pub text: String,
    pub meta: BTreeMap<String, Value>,
}

impl Reply {
    pub fn text(text: impl Into<String>) -> Self {
        Reply {
            text: text.into(),
            meta: BTreeMap::new(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConnectorError {
    #[error("authentication failed: {0}")]
    Auth(String),
    #[error("request timed out after {attempts} attempt(s)")]
    Timeout { attempts: u32 },
    #[error("rate limited after {attempts} attempt(s)")]
    RateLimit { attempts: u32 },
    #[error("protocol error: {0}")]
    Protocol(String),
    #[error("no cached response for {model_id} / {prompt_hash}")]
    CacheMiss { model_id: String, prompt_hash: String },
    #[error("cache error: {0}")]
    Cache(String),
    #[error("invalid connector spec: {0}")]
    Spec(String),
}

impl ConnectorError {
    pub fn kind(&self) -> &'static str {
        match self {
            ConnectorError::Auth(_) => "auth",
            ConnectorError::Timeout { .. } => "timeout",
            ConnectorError::RateLimit { .. } => "rate_limit",
            ConnectorError::Protocol(_) => "protocol",
            ConnectorError::CacheMiss { .. } => "cache_miss",
            ConnectorError::Cache(_) => "cache",
            ConnectorError::Spec(_) => "spec",
        }
    }
}

pub trait Connector: Send + Sync {
    fn model_id(&self) -> &str;

    fn generate_text(&self, conversation: &[Exchange], context: &GenerationContext) -> Result<Reply, ConnectorError>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConnectorKind {
    HttpChat,
    Oracle,
    Scripted,
    Constant,
    Replay,
}

fn default_max_tokens() -> u32 {
    4096
}

fn default_timeout() -> u64 {
    120
}

fn default_retries() -> u32 {
    3
}

fn default_backoff() -> u64 {
    1000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectorSpec {
    pub model_id: String,
    pub kind: ConnectorKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoint: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model_name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub api_key_env: Option<String>,
    #[serde(default)]
    pub temperature: f64,
    #[serde(default = "default_max_tokens")]
    pub max_tokens: u32,
    #[serde(default = "default_timeout")]
    pub request_timeout_s: u64,
    #[serde(default = "default_retries")]
    pub max_retries: u32,
    #[serde(default = "default_backoff")]
    pub backoff_base_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system_prompt: Option<String>,
    /// Reply text of a constant connector.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub script: Option<ScriptSpec>,
}

impl ConnectorSpec {
    pub fn new(model_id: impl Into<String>, kind: ConnectorKind) -> Self {
        ConnectorSpec {
            model_id: model_id.into(),
            kind,
            endpoint: None,
            model_name: None,
            api_key_env: None,
            temperature: 0.0,
            max_tokens: default_max_tokens(),
            request_timeout_s: default_timeout(),
            max_retries: default_retries(),
            backoff_base_ms: default_backoff(),
            system_prompt: None,
            text: None,
            script: None,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.model_id.is_empty() {
            return Err("model_id must not be empty".into());
        }
        if self.temperature.is_nan() || self.temperature < 0.0 {
            return Err("temperature must be >= 0".into());
        }
        if self.max_tokens == 0 {
            return Err("max_tokens must be positive".into());
        }
        if self.request_timeout_s == 0 {
            return Err("request_timeout_s must be positive".into());
        }
        let network = self.endpoint.is_some() || self.api_key_env.is_some() || self.model_name.is_some();
        match self.kind {
            ConnectorKind::HttpChat => {
                if self.endpoint.is_none() {
                    return Err("http-chat requires endpoint".into());
                }
                if self.api_key_env.is_none() {
                    return Err("http-chat requires api_key_env".into());
                }
            }
            ConnectorKind::Constant if self.text.is_none() => return Err("constant requires text".into()),
            ConnectorKind::Scripted if self.script.is_none() => return Err("scripted requires script".into()),
            _ if network => return Err(format!("{:?} connectors take no network fields", self.kind).to_lowercase()),
            _ => {}
        }
        Ok(())
    }

    /// Settings recorded alongside every response.
    pub fn describe(&self) -> BTreeMap<String, Value> {
        let mut meta = BTreeMap::new();
        if self.kind == ConnectorKind::HttpChat {
            meta.insert("model_name".into(), Value::from(self.model_name.clone().unwrap_or_default()));
            meta.insert("temperature".into(), Value::from(self.temperature));
            meta.insert("system_prompt".into(), Value::from(self.system_prompt.is_some()));
        }
        meta
    }
}

/// Builds the connector described by `spec`. A replay connector reads from
/// `cache`, which must then be present.
pub fn build_connector(spec: &ConnectorSpec, cache: Option<&ReplayCache>) -> Result<Arc<dyn Connector>, ConnectorError> {
    spec.validate().map_err(ConnectorError::Spec)?;
    Ok(match spec.kind {
        ConnectorKind::HttpChat => Arc::new(HttpChatConnector::from_spec(spec)?),
        ConnectorKind::Oracle => Arc::new(OracleConnector::new(&spec.model_id)),
        ConnectorKind::Constant => Arc::new(ConstantConnector::new(&spec.model_id, spec.text.clone().unwrap_or_default())),
        ConnectorKind::Scripted => {
            let script = spec.script.clone().expect("validated");
            Arc::new(ScriptedConnector::new(&spec.model_id, Script::from(script)))
        }
        ConnectorKind::Replay => {
            let cache = cache.ok_or_else(|| ConnectorError::Spec("replay connector needs a cache directory".into()))?;
            Arc::new(ReplayConnector::new(&spec.model_id, cache.clone()))
        }
    })
}
