//! Fabricating a FOAF dataset of a requested size.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{fill_template, ScoreSet, Task, TaskError, TaskInstance};
use crate::rdf::vocab::{FOAF_KNOWS, FOAF_NAME, FOAF_PERSON, RDF_TYPE};
use crate::rdf::{extract_turtle_candidate, parse_turtle_strict, salvage_parse_turtle, serialize_turtle, Graph, Term, Triple};

const TEMPLATE: &str = include_str!("../../assets/templates/synthetic-gen.v1.txt");
pub const DEFAULT_SIZE_COUNT: usize = 8;
const PEOPLE: &str = "http://example.org/kgbench/people/";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthGenSize {
    pub persons_requested: usize,
    pub links_requested: usize,
    pub size_index: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SizeParams {
    persons: usize,
    links: usize,
}

/// Default schedule: 5·2^(i−1) persons and twice as many links.
pub fn size_schedule(size_index: usize) -> Result<SynthGenSize, TaskError> {
    if !(1..=DEFAULT_SIZE_COUNT).contains(&size_index) {
        return Err(TaskError::Range(format!(
            "size index {size_index} outside 1..={DEFAULT_SIZE_COUNT}"
        )));
    }
    let persons = 5usize << (size_index - 1);
    Ok(SynthGenSize {
        persons_requested: persons,
        links_requested: 2 * persons,
        size_index,
    })
}

pub fn build_prompt(persons: usize, links: usize) -> String {
    fill_template(TEMPLATE, &[("persons", &persons.to_string()), ("links", &links.to_string())])
}

/// Distinct subjects typed foaf:Person, and distinct foaf:knows triples.
pub fn count_entities(g: &Graph) -> (usize, usize) {
    let persons: BTreeSet<&Term> = g
        .iter()
        .filter(|t| t.predicate.as_iri() == Some(RDF_TYPE) && t.object.as_iri() == Some(FOAF_PERSON))
        .map(|t| &t.subject)
        .collect();
    let links = g.iter().filter(|t| t.predicate.as_iri() == Some(FOAF_KNOWS)).count();
    (persons.len(), links)
}

/// A FOAF graph with exactly `persons` typed persons and `links` distinct
/// knows triples (no self links). Links are capped at persons·(persons−1).
pub fn foaf_dataset(persons: usize, links: usize) -> Graph {
    let mut g = Graph::new();
    g.set_prefix("ppl", PEOPLE);
    let node = |i: usize| Term::iri(format!("{PEOPLE}p{i}"));
    for i in 0..persons {
        g.insert(Triple::new(node(i), Term::iri(RDF_TYPE), Term::iri(FOAF_PERSON)));
        g.insert(Triple::new(node(i), Term::iri(FOAF_NAME), Term::literal(format!("Person {i}"))));
    }
    let links = links.min(persons * persons.saturating_sub(1));
    for j in 0..links {
        let from = j % persons;
        let to = (from + 1 + j / persons) % persons;
        g.insert(Triple::new(node(from), Term::iri(FOAF_KNOWS), node(to)));
    }
    g
}

fn relative_error(generated: usize, requested: usize, empty: bool) -> f64 {
    if requested == 0 {
        return if empty { -1.0 } else { generated as f64 };
    }
    (generated as f64 - requested as f64) / requested as f64
}

pub fn evaluate(response: &str, persons: usize, links: usize) -> ScoreSet {
    let candidate = extract_turtle_candidate(response);
    let (graph, _) = salvage_parse_turtle(&candidate);
    let (persons_generated, links_generated) = count_entities(&graph);
    let mut scores = ScoreSet::new();
    scores.insert(
        "persons_relative_error".into(),
        relative_error(persons_generated, persons, graph.is_empty()).into(),
    );
    scores.insert(
        "links_relative_error".into(),
        relative_error(links_generated, links, graph.is_empty()).into(),
    );
    scores.insert("persons_generated".into(), persons_generated.into());
    scores.insert("links_generated".into(), links_generated.into());
    scores.insert("answer_parsable".into(), parse_turtle_strict(&candidate).is_ok().into());
    scores
}

#[derive(Debug, Clone, Default)]
pub struct SyntheticGenTask;

fn parse_size(v: &Value) -> Result<SizeParams, TaskError> {
    let p: SizeParams = serde_json::from_value(v.clone()).map_err(|e| TaskError::Size(format!("{v}: {e}")))?;
    if p.persons == 0 {
        return Err(TaskError::Size(format!("{v}: persons must be at least 1")));
    }
    if p.links > p.persons * (p.persons - 1) {
        return Err(TaskError::Size(format!("{v}: more links than a simple directed graph allows")));
    }
    Ok(p)
}

impl Task for SyntheticGenTask {
    fn id(&self) -> &str {
        "synthetic-gen"
    }

    fn version(&self) -> &str {
        "1.0.0"
    }

    fn template_version(&self) -> &str {
        "synthetic-gen.v1"
    }

    fn description(&self) -> &str {
        "generate a FOAF dataset with a requested number of persons and knows links"
    }

    /// Sizes are explicit `{persons, links}` objects or indices into the
    /// default schedule.
    fn resolve_sizes(&self, sizes: &[Value]) -> Result<Vec<Value>, TaskError> {
        let to_value = |s: SynthGenSize| {
            serde_json::to_value(SizeParams {
                persons: s.persons_requested,
                links: s.links_requested,
            })
            .expect("plain struct")
        };
        if sizes.is_empty() {
            return (1..=DEFAULT_SIZE_COUNT).map(|i| size_schedule(i).map(to_value)).collect();
        }
        sizes
            .iter()
            .map(|v| match v.as_u64() {
                Some(i) => size_schedule(i as usize).map(to_value),
                None => parse_size(v).and_then(|p| serde_json::to_value(p).map_err(|e| TaskError::Size(e.to_string()))),
            })
            .collect()
    }

    fn prepare(&self, size_params: &Value, seed: u64) -> Result<TaskInstance, TaskError> {
        let p = parse_size(size_params)?;
        Ok(TaskInstance {
            task_id: self.id().to_string(),
            seed,
            size_params: size_params.clone(),
            prompt: build_prompt(p.persons, p.links),
            oracle_answer: serialize_turtle(&foaf_dataset(p.persons, p.links)),
            reference: None,
        })
    }

    fn score(&self, response: &str, instance: &TaskInstance) -> ScoreSet {
        match parse_size(&instance.size_params) {
            Ok(p) => evaluate(response, p.persons, p.links),
            Err(_) => evaluate(response, 1, 0),
        }
    }
}
