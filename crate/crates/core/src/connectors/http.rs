use std::collections::BTreeMap;
use std::io;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use serde_json::{json, Value};

use super::{Connector, ConnectorError, ConnectorSpec, Exchange, GenerationContext, Reply};

pub type Sleeper = Arc<dyn Fn(Duration) + Send + Sync>;

/// Chat-completion endpoint client. One request in flight at a time.
pub struct HttpChatConnector {
    model_id: String,
    endpoint: String,
    model_name: String,
    api_key_env: String,
    temperature: f64,
    max_tokens: u32,
    max_retries: u32,
    backoff_base: Duration,
    system_prompt: Option<String>,
    agent: ureq::Agent,
    in_flight: Mutex<()>,
    sleep: Sleeper,
}

enum Failure {
    Retry(ConnectorError),
    Fatal(ConnectorError),
}

impl HttpChatConnector {
    pub fn from_spec(spec: &ConnectorSpec) -> Result<Self, ConnectorError> {
        let endpoint = spec.endpoint.clone().ok_or_else(|| ConnectorError::Spec("endpoint missing".into()))?;
        let api_key_env = spec
            .api_key_env
            .clone()
            .ok_or_else(|| ConnectorError::Spec("api_key_env missing".into()))?;
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(spec.request_timeout_s)))
            .http_status_as_error(false)
            .build()
            .into();
        Ok(HttpChatConnector {
            model_id: spec.model_id.clone(),
            endpoint,
            model_name: spec.model_name.clone().unwrap_or_else(|| spec.model_id.clone()),
            api_key_env,
            temperature: spec.temperature,
            max_tokens: spec.max_tokens,
            max_retries: spec.max_retries,
            backoff_base: Duration::from_millis(spec.backoff_base_ms),
            system_prompt: spec.system_prompt.clone(),
            agent,
            in_flight: Mutex::new(()),
            sleep: Arc::new(std::thread::sleep),
        })
    }

    /// Replaces the function used to wait between retries.
    pub fn with_sleeper(mut self, sleep: Sleeper) -> Self {
        self.sleep = sleep;
        self
    }

    /// Delay before retry number `attempt` (0-based): base·2^attempt.
    pub fn backoff(&self, attempt: u32) -> Duration {
        self.backoff_base.saturating_mul(1u32.checked_shl(attempt).unwrap_or(u32::MAX))
    }

    fn body(&self, conversation: &[Exchange]) -> Value {
        let mut messages: Vec<Value> = Vec::with_capacity(conversation.len() + 1);
        if let Some(system) = &self.system_prompt {
            messages.push(json!({"role": "system", "content": system}));
        }
        messages.extend(conversation.iter().map(|e| json!({"role": e.role, "content": e.content})));
        json!({
            "model": self.model_name,
            "messages": messages,
            "temperature": self.temperature,
            "max_tokens": self.max_tokens,
        })
    }

    fn attempt(&self, key: &str, body: &Value, attempts: u32) -> Result<(String, Option<Value>), Failure> {
        let result = self
            .agent
            .post(&self.endpoint)
            .header("Authorization", &format!("Bearer {key}"))
            .send_json(body);
        let mut response = match result {
            Ok(r) => r,
            Err(ureq::Error::Timeout(_)) => return Err(Failure::Retry(ConnectorError::Timeout { attempts })),
            Err(ureq::Error::Io(e)) if e.kind() == io::ErrorKind::TimedOut => {
                return Err(Failure::Retry(ConnectorError::Timeout { attempts }))
            }
            Err(e) => return Err(Failure::Fatal(ConnectorError::Protocol(e.to_string()))),
        };
        let status = response.status().as_u16();
        let text = response.body_mut().read_to_string().unwrap_or_default();
        match status {
            200..=299 => {}
            401 | 403 => return Err(Failure::Fatal(ConnectorError::Auth(format!("endpoint answered {status}")))),
            429 => return Err(Failure::Retry(ConnectorError::RateLimit { attempts })),
            500..=599 => return Err(Failure::Retry(ConnectorError::Protocol(format!("server error {status}")))),
            _ => return Err(Failure::Fatal(ConnectorError::Protocol(format!("status {status}: {text}")))),
        }
        let reply: Value = serde_json::from_str(&text)
            .map_err(|e| Failure::Fatal(ConnectorError::Protocol(format!("invalid JSON reply: {e}"))))?;
        let content = reply
            .pointer("/choices/0/message/content")
            .and_then(Value::as_str)
            .ok_or_else(|| Failure::Fatal(ConnectorError::Protocol("reply lacks choices[0].message.content".into())))?;
        Ok((content.to_string(), reply.get("usage").cloned()))
    }
}

impl Connector for HttpChatConnector {
    fn model_id(&self) -> &str {
        &self.model_id
    }

    fn generate_text(&self, conversation: &[Exchange], _context: &GenerationContext) -> Result<Reply, ConnectorError> {
        if conversation.is_empty() {
            return Err(ConnectorError::Protocol("empty conversation".into()));
        }
        let key = std::env::var(&self.api_key_env)
            .ok()
            .filter(|k| !k.is_empty())
            .ok_or_else(|| ConnectorError::Auth(format!("environment variable {} is not set", self.api_key_env)))?;
        let body = self.body(conversation);
        let _guard = self.in_flight.lock().unwrap_or_else(|e| e.into_inner());
        let mut attempt = 0;
        loop {
            match self.attempt(&key, &body, attempt + 1) {
                Ok((text, usage)) => {
                    let mut meta = BTreeMap::new();
                    meta.insert("retries".to_string(), Value::from(attempt));
                    if let Some(usage) = usage {
                        meta.insert("usage".to_string(), usage);
                    }
                    return Ok(Reply { text, meta });
                }
                Err(Failure::Fatal(e)) => return Err(e),
                Err(Failure::Retry(e)) if attempt >= self.max_retries => return Err(e),
                Err(Failure::Retry(_)) => {
                    (self.sleep)(self.backoff(attempt));
                    attempt += 1;
                }
            }
        }
    }
}
