//! Extracting facts from a plaintext factsheet into Turtle.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::Value;

use super::{fill_template, score_turtle_answer, ScoreSet, Task, TaskError, TaskInstance};
use crate::rdf::{parse_turtle_strict, serialize_turtle, Graph};

const TEMPLATE: &str = include_str!("../../assets/templates/fact-extract.v1.txt");

const BUNDLED_PLAINTEXT: &str = include_str!("../../assets/factsheet-printer/plaintext.txt");
const BUNDLED_REFERENCE: &str = include_str!("../../assets/factsheet-printer/reference.ttl");
const BUNDLED_INSTRUCTIONS: &str = include_str!("../../assets/factsheet-printer/instructions.txt");
const BUNDLED_META: &str = include_str!("../../assets/factsheet-printer/meta.json");

#[derive(Debug, thiserror::Error)]
pub enum AssetError {
    #[error("missing asset file {0}")]
    Missing(PathBuf),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("reference.ttl: {0}")]
    Reference(crate::rdf::ParseError),
    #[error("meta.json: {0}")]
    Meta(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Meta {
    asset_id: String,
    version: String,
    #[serde(default)]
    description: String,
}

#[derive(Debug, Clone)]
pub struct FactSheetAsset {
    pub asset_id: String,
    pub version: String,
    pub description: String,
    pub plaintext: String,
    pub instructions: String,
    pub reference: Graph,
}

impl FactSheetAsset {
    fn from_parts(plaintext: &str, reference: &str, instructions: &str, meta: &str) -> Result<Self, AssetError> {
        let meta: Meta = serde_json::from_str(meta).map_err(|e| AssetError::Meta(e.to_string()))?;
        let reference = parse_turtle_strict(reference).map_err(AssetError::Reference)?;
        if reference.is_empty() {
            return Err(AssetError::Meta("reference graph is empty".into()));
        }
        Ok(FactSheetAsset {
            asset_id: meta.asset_id,
            version: meta.version,
            description: meta.description,
            plaintext: plaintext.to_string(),
            instructions: instructions.to_string(),
            reference,
        })
    }

    /// The fictional 3D-printer factsheet shipped with the crate.
    pub fn bundled() -> Self {
        Self::from_parts(BUNDLED_PLAINTEXT, BUNDLED_REFERENCE, BUNDLED_INSTRUCTIONS, BUNDLED_META)
            .expect("bundled asset is valid")
    }

    pub fn build_prompt(&self) -> String {
        fill_template(
            TEMPLATE,
            &[
                ("instructions", self.instructions.trim_end()),
                ("plaintext", self.plaintext.trim_end()),
            ],
        )
    }
}

/// Loads an asset directory holding `plaintext.txt`, `reference.ttl`,
/// `instructions.txt` and `meta.json`.
pub fn load_asset(dir: impl AsRef<Path>) -> Result<FactSheetAsset, AssetError> {
    let dir = dir.as_ref();
    let read = |name: &str| {
        let path = dir.join(name);
        if !path.is_file() {
            return Err(AssetError::Missing(path));
        }
        fs::read_to_string(&path).map_err(|source| AssetError::Io { path, source })
    };
    let plaintext = read("plaintext.txt")?;
    let reference = read("reference.ttl")?;
    let instructions = read("instructions.txt")?;
    let meta = read("meta.json")?;
    FactSheetAsset::from_parts(&plaintext, &reference, &instructions, &meta)
}

#[derive(Debug, Clone)]
pub struct FactExtractTask {
    asset: FactSheetAsset,
}

impl FactExtractTask {
    pub fn new(asset: FactSheetAsset) -> Self {
        FactExtractTask { asset }
    }

    pub fn bundled() -> Self {
        Self::new(FactSheetAsset::bundled())
    }

    pub fn asset(&self) -> &FactSheetAsset {
        &self.asset
    }
}

impl Task for FactExtractTask {
    fn id(&self) -> &str {
        "fact-extract"
    }

    fn version(&self) -> &str {
        "1.0.0"
    }

    fn template_version(&self) -> &str {
        "fact-extract.v1"
    }

    fn description(&self) -> &str {
        "convert a plaintext factsheet into Turtle following given conventions"
    }

    fn resolve_sizes(&self, sizes: &[Value]) -> Result<Vec<Value>, TaskError> {
        match sizes {
            [] => Ok(vec![Value::from(1)]),
            [v] if v.as_u64() == Some(1) => Ok(vec![Value::from(1)]),
            _ => Err(TaskError::Size("fact-extract has the single size 1".into())),
        }
    }

    fn prepare(&self, size_params: &Value, seed: u64) -> Result<TaskInstance, TaskError> {
        if size_params.as_u64() != Some(1) {
            return Err(TaskError::Size(format!("unsupported size {size_params}")));
        }
        Ok(TaskInstance {
            task_id: self.id().to_string(),
            seed,
            size_params: size_params.clone(),
            prompt: self.asset.build_prompt(),
            oracle_answer: serialize_turtle(&self.asset.reference),
            reference: Some(self.asset.reference.clone()),
        })
    }

    fn score(&self, response: &str, _instance: &TaskInstance) -> ScoreSet {
        evaluate(response, &self.asset)
    }
}

pub fn evaluate(response: &str, asset: &FactSheetAsset) -> ScoreSet {
    let s = score_turtle_answer(response, &asset.reference);
    let mut scores = ScoreSet::new();
    scores.insert("f1".into(), s.diff.f1.into());
    scores.insert("precision".into(), s.diff.precision.into());
    scores.insert("recall".into(), s.diff.recall.into());
    scores.insert("answer_parsable".into(), s.answer_parsable.into());
    scores.insert("failed_statements".into(), s.failed_statements.into());
    scores
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{Term, Triple};
    use crate::tasks::ScoreValue;

    fn f1(scores: &ScoreSet) -> f64 {
        scores["f1"].as_f64()
    }

    #[test]
    fn bundled_asset_loads() {
        let asset = FactSheetAsset::bundled();
        assert!(asset.reference.len() >= 20);
        assert_eq!(asset.asset_id, "factsheet-printer");
    }

    #[test]
    fn instructions_mention_every_predicate() {
        let asset = FactSheetAsset::bundled();
        for t in &asset.reference {
            let iri = t.predicate.as_iri().unwrap();
            let local = iri.rsplit(['#', '/']).next().unwrap();
            assert!(asset.instructions.contains(local), "{iri}");
        }
    }

    #[test]
    fn prompt_contains_plaintext_and_instructions() {
        let asset = FactSheetAsset::bundled();
        let prompt = asset.build_prompt();
        assert!(prompt.contains(asset.plaintext.trim_end()));
        assert!(prompt.contains("pr:maxBedTempC"));
        assert_eq!(prompt, asset.build_prompt());
    }

    #[test]
    fn perfect_answer() {
        let asset = FactSheetAsset::bundled();
        assert_eq!(f1(&evaluate(&serialize_turtle(&asset.reference), &asset)), 1.0);
    }

    #[test]
    fn unparsable_answer_scores_zero() {
        let asset = FactSheetAsset::bundled();
        let s = evaluate("pr:VelaXL pr:weightKg 18.5 @@@", &asset);
        assert_eq!(f1(&s), 0.0);
        assert_eq!(s["answer_parsable"], ScoreValue::Bool(false));
    }

    #[test]
    fn invented_triples_lower_precision() {
        let asset = FactSheetAsset::bundled();
        let mut g = asset.reference.clone();
        let extra = asset.reference.len() / 4;
        for i in 0..extra {
            g.insert(Triple::new(
                Term::iri("http://example.org/kgbench/printers#VelaXL"),
                Term::iri("http://example.org/kgbench/printers#note"),
                Term::literal(format!("invented {i}")),
            ));
        }
        let s = evaluate(&serialize_turtle(&g), &asset);
        assert_eq!(s["recall"].as_f64(), 1.0);
        assert!((s["precision"].as_f64() - 0.8).abs() < 1e-12);
        assert!((f1(&s) - 2.0 * 0.8 / 1.8).abs() < 1e-12);
    }

    #[test]
    fn missing_file_and_broken_reference() {
        let dir = tempfile::tempdir().unwrap();
        for name in ["plaintext.txt", "instructions.txt", "meta.json"] {
            fs::write(dir.path().join(name), if name == "meta.json" { BUNDLED_META } else { "x" }).unwrap();
        }
        assert!(matches!(load_asset(dir.path()), Err(AssetError::Missing(_))));
        fs::write(dir.path().join("reference.ttl"), "<http://a> <http://b> .\n").unwrap();
        let err = load_asset(dir.path()).unwrap_err();
        assert!(matches!(err, AssetError::Reference(_)));
        assert!(err.to_string().starts_with("reference.ttl: 1:"), "{err}");
    }
}
