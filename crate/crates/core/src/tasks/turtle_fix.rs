//! Repairing corrupted Turtle documents.

use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{fill_template, score_turtle_answer, ScoreSet, Task, TaskError, TaskInstance};
use crate::rdf::vocab::{FOAF, FOAF_KNOWS, FOAF_NAME, FOAF_PERSON, RDF_TYPE, XSD};
use crate::rdf::{serialize_turtle, split_statements, Graph, Literal, Term, Triple};

pub const LAB: &str = "http://example.org/kgbench/lab#";
const TEMPLATE: &str = include_str!("../../assets/templates/turtle-fix.v1.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TurtleFixSize {
    pub triple_count: usize,
    pub error_count: usize,
}

impl Default for TurtleFixSize {
    fn default() -> Self {
        TurtleFixSize {
            triple_count: 20,
            error_count: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    DropDot,
    SwapSeparator,
    BreakPrefix,
    DeleteClosingAngle,
    UnbalanceQuote,
    UndeclaredPrefix,
}

/// One manipulation. `offset` is a byte offset into the corrupted text,
/// where `replacement` now stands in place of `original`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectedError {
    pub kind: ErrorKind,
    pub statement_index: usize,
    pub offset: usize,
    pub original: String,
    pub replacement: String,
}

#[derive(Debug, Clone)]
pub struct TurtleFixInstance {
    pub seed: u64,
    pub size: TurtleFixSize,
    pub reference: Graph,
    pub reference_text: String,
    pub corrupted_text: String,
    pub error_log: Vec<InjectedError>,
    pub prompt: String,
}

impl TurtleFixInstance {
    pub fn generate(seed: u64, size: TurtleFixSize) -> Result<Self, TaskError> {
        if size.triple_count == 0 {
            return Err(TaskError::Size("triple_count must be at least 1".into()));
        }
        let reference = generate_reference(seed, size.triple_count);
        let reference_text = serialize_turtle(&reference);
        let (corrupted_text, error_log) = inject_errors(&reference_text, size.error_count, seed)?;
        let prompt = build_prompt(&corrupted_text);
        Ok(TurtleFixInstance {
            seed,
            size,
            reference,
            reference_text,
            corrupted_text,
            error_log,
            prompt,
        })
    }

    /// Writes `reference.ttl`, `corrupted.ttl` and `errors.json` into `dir`.
    pub fn export(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("reference.ttl"), &self.reference_text)?;
        fs::write(dir.join("corrupted.ttl"), &self.corrupted_text)?;
        let log = serde_json::json!({
            "seed": self.seed,
            "size": self.size,
            "errors": self.error_log,
        });
        fs::write(dir.join("errors.json"), serde_json::to_string_pretty(&log)?)?;
        Ok(())
    }
}

pub fn build_prompt(corrupted_text: &str) -> String {
    fill_template(TEMPLATE, &[("document", corrupted_text)])
}

const FIRST: [&str; 12] = [
    "Ada", "Bela", "Chidi", "Dana", "Emil", "Farah", "Goran", "Hana", "Ivo", "Jun", "Kaia", "Lior",
];
const LAST: [&str; 10] = [
    "Moreau", "Novak", "Okafor", "Petrov", "Quist", "Rahman", "Sato", "Tamm", "Ueda", "Varga",
];
const MODELS: [&str; 6] = ["Photon S2", "Kestrel 300", "Argo Mini", "Vela XL", "Nimbus 7", "Orca Pro"];
const BUILDINGS: [&str; 4] = ["North Wing", "South Wing", "Annex", "Main Hall"];

fn lab(local: impl AsRef<str>) -> Term {
    Term::iri(format!("{LAB}{}", local.as_ref()))
}

fn xsd(local: &str) -> String {
    format!("{XSD}{local}")
}

fn person(i: usize, persons: usize, rng: &mut ChaCha8Rng) -> Vec<Triple> {
    let s = lab(format!("person{i}"));
    let first = FIRST[rng.gen_range(0..FIRST.len())];
    let last = LAST[rng.gen_range(0..LAST.len())];
    let mut out = vec![
        Triple::new(s.clone(), Term::iri(RDF_TYPE), Term::iri(FOAF_PERSON)),
        Triple::new(s.clone(), Term::iri(FOAF_NAME), Term::literal(format!("{first} {last}"))),
        Triple::new(s.clone(), lab("age"), Term::typed(rng.gen_range(19..71).to_string(), xsd("integer"))),
        Triple::new(
            s.clone(),
            lab("email"),
            Term::literal(format!("{}.{}{i}@example.org", first.to_lowercase(), last.to_lowercase())),
        ),
        Triple::new(
            s.clone(),
            Term::iri(format!("{FOAF}homepage")),
            Term::iri(format!("http://people.example.net/~{}{i}", first.to_lowercase())),
        ),
    ];
    if persons > 0 {
        let other = rng.gen_range(0..persons);
        out.push(Triple::new(s.clone(), Term::iri(FOAF_KNOWS), lab(format!("person{other}"))));
    }
    if rng.gen_bool(0.3) {
        out.push(Triple::new(
            s,
            lab("motto"),
            Term::Literal(Literal::lang("immer weiter", "de")),
        ));
    }
    out
}

fn device(i: usize, persons: usize, rng: &mut ChaCha8Rng) -> Vec<Triple> {
    let s = lab(format!("device{i}"));
    let location = Term::blank(format!("location{i}"));
    let mut out = vec![
        Triple::new(s.clone(), Term::iri(RDF_TYPE), lab("Device")),
        Triple::new(s.clone(), lab("model"), Term::literal(MODELS[rng.gen_range(0..MODELS.len())])),
        Triple::new(
            s.clone(),
            lab("weightKg"),
            Term::typed(format!("{}.{}", rng.gen_range(1..40), rng.gen_range(0..10)), xsd("decimal")),
        ),
        Triple::new(
            s.clone(),
            lab("purchased"),
            Term::typed(
                format!("20{:02}-{:02}-{:02}", rng.gen_range(10..24), rng.gen_range(1..13), rng.gen_range(1..29)),
                xsd("date"),
            ),
        ),
        Triple::new(s.clone(), lab("networked"), Term::typed(rng.gen_bool(0.5).to_string(), xsd("boolean"))),
    ];
    if persons > 0 {
        let owner = rng.gen_range(0..persons);
        out.push(Triple::new(s.clone(), lab("owner"), lab(format!("person{owner}"))));
    }
    out.push(Triple::new(s, lab("location"), location.clone()));
    out.push(Triple::new(location.clone(), lab("room"), Term::literal(format!("R{}", rng.gen_range(1..60)))));
    out.push(Triple::new(
        location,
        lab("building"),
        Term::literal(BUILDINGS[rng.gen_range(0..BUILDINGS.len())]),
    ));
    out
}

/// Deterministic reference graph with exactly `triple_count` triples over a
/// fictional lab namespace: people, devices and blank-node locations.
pub fn generate_reference(seed: u64, triple_count: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new();
    g.set_prefix("lab", LAB);
    let (mut persons, mut devices) = (0, 0);
    while g.len() < triple_count {
        let block = if persons == 0 || rng.gen_bool(0.55) {
            persons += 1;
            person(persons - 1, persons - 1, &mut rng)
        } else {
            devices += 1;
            device(devices - 1, persons, &mut rng)
        };
        for t in block {
            if g.len() == triple_count {
                break;
            }
            g.insert(t);
        }
    }
    g
}

#[derive(Clone, Copy, PartialEq)]
enum Scan {
    Normal,
    Iri,
    Str,
    Comment,
}

struct Site {
    kind: ErrorKind,
    offset: usize,
    original: String,
    replacement: String,
}

/// Candidate manipulation sites within one statement. Offsets are absolute.
fn sites(text: &str, start: usize, end: usize, declared: &BTreeSet<String>) -> Vec<Site> {
    let unit = &text[start..end];
    let mut out = Vec::new();
    let site = |kind, offset: usize, original: &str, replacement: &str| Site {
        kind,
        offset,
        original: original.to_string(),
        replacement: replacement.to_string(),
    };
    if unit.ends_with('.') {
        out.push(site(ErrorKind::DropDot, end - 1, ".", ""));
    }
    let trimmed = unit.trim_start();
    let directive = trimmed.starts_with("@prefix");
    if directive {
        let lead = unit.len() - trimmed.len();
        if let Some(colon) = trimmed.find(':') {
            out.push(site(ErrorKind::BreakPrefix, start + lead + colon, ":", ""));
        }
    }
    let mut state = Scan::Normal;
    let mut token_start: Option<usize> = None;
    let bytes = unit.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match state {
            Scan::Normal => {
                let boundary = i == 0 || matches!(bytes[i - 1], b' ' | b'\n' | b'\t' | b'\r' | b',' | b';' | b'(' | b'[');
                match c {
                    b'<' => state = Scan::Iri,
                    b'"' => state = Scan::Str,
                    b'#' => state = Scan::Comment,
                    b';' => out.push(site(ErrorKind::SwapSeparator, start + i, ";", ",")),
                    b',' => out.push(site(ErrorKind::SwapSeparator, start + i, ",", ";")),
                    c if boundary && c.is_ascii_alphabetic() && !directive => token_start = Some(i),
                    b':' => {
                        if let Some(ts) = token_start.take() {
                            let prefix = &unit[ts..i];
                            let undeclared = (1..)
                                .map(|n| format!("{prefix}{}", "x".repeat(n)))
                                .find(|p| !declared.contains(p))
                                .expect("an undeclared prefix exists");
                            out.push(site(
                                ErrorKind::UndeclaredPrefix,
                                start + ts,
                                &format!("{prefix}:"),
                                &format!("{undeclared}:"),
                            ));
                        }
                    }
                    c if !(c.is_ascii_alphanumeric() || c == b'_' || c == b'-') => token_start = None,
                    _ => {}
                }
            }
            Scan::Iri => {
                if c == b'>' {
                    out.push(site(ErrorKind::DeleteClosingAngle, start + i, ">", ""));
                    state = Scan::Normal;
                }
            }
            Scan::Str => {
                if c == b'\\' {
                    i += 1;
                } else if c == b'"' {
                    out.push(site(ErrorKind::UnbalanceQuote, start + i, "\"", ""));
                    state = Scan::Normal;
                }
            }
            Scan::Comment => {
                if c == b'\n' {
                    state = Scan::Normal;
                }
            }
        }
        i += 1;
    }
    out
}

fn declared_prefixes(doc: &str) -> BTreeSet<String> {
    doc.lines()
        .filter_map(|l| l.trim_start().strip_prefix("@prefix"))
        .filter_map(|rest| rest.trim_start().split(':').next())
        .map(|p| p.trim().to_string())
        .collect()
}

/// Applies `k` manipulations to distinct statements of `doc`, chosen by
/// `seed`. Returns the corrupted text and the log needed to undo it.
pub fn inject_errors(doc: &str, k: usize, seed: u64) -> Result<(String, Vec<InjectedError>), TaskError> {
    if k == 0 {
        return Err(TaskError::Size("error_count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0de_7f17_e55e);
    let declared = declared_prefixes(doc);
    let statements = split_statements(doc);
    let candidates: Vec<(usize, Vec<Site>)> = statements
        .iter()
        .enumerate()
        .map(|(i, r)| (i, sites(doc, r.start, r.end, &declared)))
        .filter(|(_, s)| !s.is_empty())
        .collect();
    if candidates.len() < k {
        return Err(TaskError::Size(format!(
            "{k} errors requested but only {} manipulable statements",
            candidates.len()
        )));
    }
    let mut chosen: Vec<(usize, Site)> = candidates
        .choose_multiple(&mut rng, k)
        .map(|(index, sites)| {
            let kinds: BTreeSet<ErrorKind> = sites.iter().map(|s| s.kind).collect();
            let kind = *kinds.iter().nth(rng.gen_range(0..kinds.len())).expect("non-empty");
            let of_kind: Vec<&Site> = sites.iter().filter(|s| s.kind == kind).collect();
            let s = of_kind[rng.gen_range(0..of_kind.len())];
            (
                *index,
                Site {
                    kind: s.kind,
                    offset: s.offset,
                    original: s.original.clone(),
                    replacement: s.replacement.clone(),
                },
            )
        })
        .collect();
    chosen.sort_by_key(|(_, s)| s.offset);

    let mut corrupted = String::with_capacity(doc.len());
    let mut log = Vec::with_capacity(k);
    let mut cursor = 0;
    for (statement_index, s) in chosen {
        corrupted.push_str(&doc[cursor..s.offset]);
        log.push(InjectedError {
            kind: s.kind,
            statement_index,
            offset: corrupted.len(),
            original: s.original.clone(),
            replacement: s.replacement.clone(),
        });
        corrupted.push_str(&s.replacement);
        cursor = s.offset + s.original.len();
    }
    corrupted.push_str(&doc[cursor..]);
    Ok((corrupted, log))
}

/// Undoes logged manipulations on a corrupted document.
pub fn apply_inverse(corrupted: &str, log: &[InjectedError]) -> String {
    let mut text = corrupted.to_string();
    let mut entries: Vec<&InjectedError> = log.iter().collect();
    entries.sort_by_key(|e| std::cmp::Reverse(e.offset));
    for e in entries {
        text.replace_range(e.offset..e.offset + e.replacement.len(), &e.original);
    }
    text
}

#[derive(Debug, Clone, Default)]
pub struct TurtleFixTask;

impl Task for TurtleFixTask {
    fn id(&self) -> &str {
        "turtle-fix"
    }

    fn version(&self) -> &str {
        "1.0.0"
    }

    fn template_version(&self) -> &str {
        "turtle-fix.v1"
    }

    fn description(&self) -> &str {
        "repair syntax errors injected into a generated Turtle document"
    }

    fn resolve_sizes(&self, sizes: &[Value]) -> Result<Vec<Value>, TaskError> {
        if sizes.is_empty() {
            return Ok(vec![serde_json::to_value(TurtleFixSize::default()).expect("plain struct")]);
        }
        sizes
            .iter()
            .map(|v| {
                let size: TurtleFixSize = serde_json::from_value(v.clone())
                    .map_err(|e| TaskError::Size(format!("{v}: {e}")))?;
                if size.triple_count == 0 || size.error_count == 0 {
                    return Err(TaskError::Size(format!("{v}: counts must be at least 1")));
                }
                Ok(serde_json::to_value(size).expect("plain struct"))
            })
            .collect()
    }

    fn prepare(&self, size_params: &Value, seed: u64) -> Result<TaskInstance, TaskError> {
        let size: TurtleFixSize =
            serde_json::from_value(size_params.clone()).map_err(|e| TaskError::Size(e.to_string()))?;
        let instance = TurtleFixInstance::generate(seed, size)?;
        Ok(TaskInstance {
            task_id: self.id().to_string(),
            seed,
            size_params: size_params.clone(),
            prompt: instance.prompt,
            oracle_answer: instance.reference_text,
            reference: Some(instance.reference),
        })
    }

    fn score(&self, response: &str, instance: &TaskInstance) -> ScoreSet {
        let reference = instance.reference.as_ref().expect("turtle-fix instances carry a reference");
        evaluate(response, reference)
    }
}

/// Scores a repair attempt against the uncorrupted reference.
pub fn evaluate(response: &str, reference: &Graph) -> ScoreSet {
    let s = score_turtle_answer(response, reference);
    let mut scores = ScoreSet::new();
    scores.insert("f1".into(), s.diff.f1.into());
    scores.insert("precision".into(), s.diff.precision.into());
    scores.insert("recall".into(), s.diff.recall.into());
    scores.insert("answer_parsable".into(), s.answer_parsable.into());
    scores.insert("exact_restore".into(), s.diff.is_exact().into());
    scores.insert("failed_statements".into(), s.failed_statements.into());
    scores
}
