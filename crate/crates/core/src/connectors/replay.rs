use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{Connector, ConnectorError, Exchange, GenerationContext, Reply};

/// SHA-256 (hex) of the conversation's JSON serialization.
pub fn conversation_hash(conversation: &[Exchange]) -> String {
    let json = serde_json::to_vec(conversation).expect("exchanges serialize");
    hex::encode(Sha256::digest(&json))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub model_id: String,
    pub prompt_hash: String,
    pub conversation: Vec<Exchange>,
    pub response: String,
    pub recorded_at: String,
}

/// Directory of recorded responses, one JSON file per entry.
#[derive(Debug, Clone)]
pub struct ReplayCache {
    dir: PathBuf,
}

fn dir_name(model_id: &str) -> String {
    let safe: String = model_id
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '_') { c } else { '_' })
        .collect();
    let tag = &hex::encode(Sha256::digest(model_id.as_bytes()))[..8];
    format!("{safe}-{tag}")
}

impl ReplayCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ReplayCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, model_id: &str, prompt_hash: &str) -> PathBuf {
        self.dir.join(dir_name(model_id)).join(format!("{prompt_hash}.json"))
    }

    pub fn lookup(&self, model_id: &str, conversation: &[Exchange]) -> Result<Option<CacheEntry>, ConnectorError> {
        let path = self.path(model_id, &conversation_hash(conversation));
        let raw = match fs::read_to_string(&path) {
            Ok(raw) => raw,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(ConnectorError::Cache(format!("{}: {e}", path.display()))),
        };
        let entry: CacheEntry =
            serde_json::from_str(&raw).map_err(|e| ConnectorError::Cache(format!("{}: {e}", path.display())))?;
        Ok((entry.model_id == model_id && entry.conversation == conversation).then_some(entry))
    }

    pub fn record(&self, model_id: &str, conversation: &[Exchange], response: &str) -> Result<CacheEntry, ConnectorError> {
        let entry = CacheEntry {
            model_id: model_id.to_string(),
            prompt_hash: conversation_hash(conversation),
            conversation: conversation.to_vec(),
            response: response.to_string(),
            recorded_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
        };
        let path = self.path(model_id, &entry.prompt_hash);
        let err = |e: std::io::Error| ConnectorError::Cache(format!("{}: {e}", path.display()));
        fs::create_dir_all(path.parent().expect("entry path has a parent")).map_err(err)?;
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&entry).expect("entry serializes")).map_err(err)?;
        fs::rename(&tmp, &path).map_err(err)?;
        Ok(entry)
    }
}

/// Serves responses from the cache only.
#[derive(Debug, Clone)]
pub struct ReplayConnector {
    model_id: String,
    cache: ReplayCache,
}

impl ReplayConnector {
    pub fn new(model_id: impl Into<String>, cache: ReplayCache) -> Self {
        ReplayConnector {
            model_id: model_id.into(),
            cache,
        }
    }
}

impl Connector for ReplayConnector {
    fn model_id(&self) -> &str {
        &self.model_id
    }

    fn generate_text(&self, conversation: &[Exchange], _context: &GenerationContext) -> Result<Reply, ConnectorError> {
        match self.cache.lookup(&self.model_id, conversation)? {
            Some(entry) => Ok(Reply::text(entry.response)),
            None => Err(ConnectorError::CacheMiss {
                model_id: self.model_id.clone(),
                prompt_hash: conversation_hash(conversation),
            }),
        }
    }
}

/// Looks up the cache before calling the wrapped connector and records
/// every fresh response.
pub struct CachedConnector {
    inner: Arc<dyn Connector>,
    cache: ReplayCache,
}

impl CachedConnector {
    pub fn new(inner: Arc<dyn Connector>, cache: ReplayCache) -> Self {
        CachedConnector { inner, cache }
    }
}

impl Connector for CachedConnector {
    fn model_id(&self) -> &str {
        self.inner.model_id()
    }

    fn generate_text(&self, conversation: &[Exchange], context: &GenerationContext) -> Result<Reply, ConnectorError> {
        if let Some(entry) = self.cache.lookup(self.model_id(), conversation)? {
            return Ok(Reply::text(entry.response));
        }
        let reply = self.inner.generate_text(conversation, context)?;
        self.cache.record(self.model_id(), conversation, &reply.text)?;
        Ok(reply)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectors::ConstantConnector;

    #[test]
    fn store_then_hit_and_model_isolation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ReplayCache::new(dir.path());
        let conv = [Exchange::user("prompt")];
        cache.record("m1", &conv, "answer").unwrap();
        assert_eq!(cache.lookup("m1", &conv).unwrap().unwrap().response, "answer");
        assert!(cache.lookup("m2", &conv).unwrap().is_none());
        assert!(cache.lookup("m1", &[Exchange::user("other")]).unwrap().is_none());
    }

    #[test]
    fn identical_conversations_share_a_key() {
        let a = [Exchange::user("x y"), Exchange::assistant("z")];
        let b = a.clone();
        assert_eq!(conversation_hash(&a), conversation_hash(&b));
        assert_ne!(conversation_hash(&a), conversation_hash(&a[..1]));
    }

    #[test]
    fn replay_after_recording_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ReplayCache::new(dir.path());
        let live = CachedConnector::new(Arc::new(ConstantConnector::new("m", "résumé \"q\"\n")), cache.clone());
        let conv = [Exchange::user("p")];
        let ctx = GenerationContext::default();
        let recorded = live.generate_text(&conv, &ctx).unwrap().text;
        let replay = ReplayConnector::new("m", cache);
        assert_eq!(replay.generate_text(&conv, &ctx).unwrap().text, recorded);
        assert!(matches!(
            replay.generate_text(&[Exchange::user("q")], &ctx),
            Err(ConnectorError::CacheMiss { .. })
        ));
    }

    #[test]
    fn unwritable_store_is_a_cache_error() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("not-a-dir");
        fs::write(&file, "").unwrap();
        let cache = ReplayCache::new(&file);
        assert!(matches!(cache.record("m", &[Exchange::user("p")], "r"), Err(ConnectorError::Cache(_))));
    }
}
