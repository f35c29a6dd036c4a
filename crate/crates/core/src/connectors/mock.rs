use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::replay::conversation_hash;
use super::{Connector, ConnectorError, Exchange, GenerationContext, Reply, Role};

/// Returns the perfect answer the harness supplies out of band.
#[derive(Debug, Clone)]
pub struct OracleConnector {
    model_id: String,
}

impl OracleConnector {
    pub fn new(model_id: impl Into<String>) -> Self {
        OracleConnector {
            model_id: model_id.into(),
        }
    }
}

impl Connector for OracleConnector {
    fn model_id(&self) -> &str {
        &self.model_id
    }

    fn generate_text(&self, _conversation: &[Exchange], context: &GenerationContext) -> Result<Reply, ConnectorError> {
        context
            .oracle_answer
            .clone()
            .map(Reply::text)
            .ok_or_else(|| ConnectorError::Protocol("oracle connector called without an instance".into()))
    }
}

#[derive(Debug, Clone)]
pub struct ConstantConnector {
    model_id: String,
    text: String,
}

impl ConstantConnector {
    pub fn new(model_id: impl Into<String>, text: impl Into<String>) -> Self {
        ConstantConnector {
            model_id: model_id.into(),
            text: text.into(),
        }
    }
}

impl Connector for ConstantConnector {
    fn model_id(&self) -> &str {
        &self.model_id
    }

    fn generate_text(&self, _conversation: &[Exchange], _context: &GenerationContext) -> Result<Reply, ConnectorError> {
        Ok(Reply::text(self.text.clone()))
    }
}

/// Serializable script forms accepted in configuration files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ScriptSpec {
    /// Repeat the last user turn.
    Echo,
    /// Look replies up by conversation hash.
    Table {
        responses: BTreeMap<String, String>,
        #[serde(default)]
        default: Option<String>,
    },
}

pub type ScriptFn = dyn Fn(&[Exchange], &GenerationContext) -> String + Send + Sync;

#[derive(Clone)]
pub enum Script {
    Echo,
    Table {
        responses: BTreeMap<String, String>,
        default: Option<String>,
    },
    Func(Arc<ScriptFn>),
}

impl fmt::Debug for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Script::Echo => f.write_str("Echo"),
            Script::Table { responses, .. } => write!(f, "Table({} entries)", responses.len()),
            Script::Func(_) => f.write_str("Func"),
        }
    }
}

impl From<ScriptSpec> for Script {
    fn from(spec: ScriptSpec) -> Self {
        match spec {
            ScriptSpec::Echo => Script::Echo,
            ScriptSpec::Table { responses, default } => Script::Table { responses, default },
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScriptedConnector {
    model_id: String,
    script: Script,
}

impl ScriptedConnector {
    pub fn new(model_id: impl Into<String>, script: Script) -> Self {
        ScriptedConnector {
            model_id: model_id.into(),
            script,
        }
    }

    pub fn from_fn(
        model_id: impl Into<String>,
        f: impl Fn(&[Exchange], &GenerationContext) -> String + Send + Sync + 'static,
    ) -> Self {
        Self::new(model_id, Script::Func(Arc::new(f)))
    }
}

impl Connector for ScriptedConnector {
    fn model_id(&self) -> &str {
        &self.model_id
    }

    fn generate_text(&self, conversation: &[Exchange], context: &GenerationContext) -> Result<Reply, ConnectorError> {
        let text = match &self.script {
            Script::Echo => conversation
                .iter()
                .rev()
                .find(|e| e.role == Role::User)
                .map(|e| e.content.clone())
                .unwrap_or_default(),
            Script::Table { responses, default } => {
                let key = conversation_hash(conversation);
                match responses.get(&key).or(default.as_ref()) {
                    Some(text) => text.clone(),
                    None => return Err(ConnectorError::Protocol(format!("no scripted reply for {key}"))),
                }
            }
            Script::Func(f) => f(conversation, context),
        };
        Ok(Reply::text(text))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_ignores_input() {
        let c = ConstantConnector::new("c", "The file is correct.");
        let ctx = GenerationContext::default();
        for prompt in ["a", "b"] {
            assert_eq!(c.generate_text(&[Exchange::user(prompt)], &ctx).unwrap().text, "The file is correct.");
        }
    }

    #[test]
    fn oracle_uses_context() {
        let c = OracleConnector::new("o");
        let ctx = GenerationContext {
            oracle_answer: Some("answer".into()),
            ..Default::default()
        };
        assert_eq!(c.generate_text(&[Exchange::user("q")], &ctx).unwrap().text, "answer");
        assert!(c.generate_text(&[Exchange::user("q")], &GenerationContext::default()).is_err());
    }

    #[test]
    fn echo_and_table() {
        let ctx = GenerationContext::default();
        let conv = [Exchange::user("first"), Exchange::assistant("x"), Exchange::user("second")];
        let echo = ScriptedConnector::new("e", Script::Echo);
        assert_eq!(echo.generate_text(&conv, &ctx).unwrap().text, "second");

        let spec: ScriptSpec = serde_json::from_value(serde_json::json!({
            "type": "table",
            "responses": { conversation_hash(&conv): "hit" }
        }))
        .unwrap();
        let table = ScriptedConnector::new("t", spec.into());
        assert_eq!(table.generate_text(&conv, &ctx).unwrap().text, "hit");
        assert!(table.generate_text(&conv[..1], &ctx).is_err());
    }
}
