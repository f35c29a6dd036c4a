use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::canon::canonical_blank_labels;
use super::literal::canonical_literal;
use super::term::{Graph, Term, Triple};

/// Comparison-ready form of a graph: canonical literals, canonical blank
/// labels `c0, c1, …`, sorted by N-Triples serialization, no duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NormalizedTripleSet {
    triples: Vec<Triple>,
}

impl NormalizedTripleSet {
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn to_graph(&self) -> Graph {
        self.triples.iter().cloned().collect()
    }

    /// One N-Triples line per triple, in canonical order.
    pub fn lines(&self) -> Vec<String> {
        self.triples.iter().map(ToString::to_string).collect()
    }
}

impl Serialize for NormalizedTripleSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.lines().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NormalizedTripleSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let lines = Vec::<String>::deserialize(deserializer)?;
        let doc = lines.join("\n");
        let graph = super::parse_turtle_strict(&doc).map_err(serde::de::Error::custom)?;
        Ok(normalize(&graph))
    }
}

fn canonical_term(term: &Term) -> Term {
    match term {
        Term::Literal(lit) => Term::Literal(canonical_literal(lit)),
        other => other.clone(),
    }
}

/// Canonicalizes literals, relabels blank nodes canonically, then sorts and
/// deduplicates.
pub fn normalize(g: &Graph) -> NormalizedTripleSet {
    let literal_canonical: Graph = g
        .iter()
        .map(|t| Triple {
            subject: t.subject.clone(),
            predicate: t.predicate.clone(),
            object: canonical_term(&t.object),
        })
        .collect();
    let labels: BTreeMap<String, String> = canonical_blank_labels(&literal_canonical);
    let relabeled = literal_canonical.map_blanks(|b| labels[b].clone());
    let mut keyed: Vec<(String, Triple)> = relabeled
        .iter()
        .map(|t| (t.to_string(), t.clone()))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    NormalizedTripleSet {
        triples: keyed.into_iter().map(|(_, t)| t).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::parse_turtle_strict;
    use crate::rdf::vocab::XSD_INTEGER;

    #[test]
    fn idempotent_on_blank_free_graph() {
        let g = parse_turtle_strict("@prefix ex: <http://ex.org/> . ex:a ex:p ex:b .").unwrap();
        let once = normalize(&g);
        assert_eq!(once.len(), 1);
        assert_eq!(normalize(&once.to_graph()), once);
        assert_eq!(once.lines(), ["<http://ex.org/a> <http://ex.org/p> <http://ex.org/b> ."]);
    }

    #[test]
    fn blank_label_choice_is_erased() {
        let a = parse_turtle_strict("_:x <http://p> \"v\" . _:x <http://q> <http://o> .").unwrap();
        let b = parse_turtle_strict("_:y <http://p> \"v\" . _:y <http://q> <http://o> .").unwrap();
        assert_eq!(normalize(&a), normalize(&b));
    }

    #[test]
    fn integer_leading_zero() {
        let g = parse_turtle_strict(
            "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> . <http://s> <http://p> \"01\"^^xsd:integer .",
        )
        .unwrap();
        let n = normalize(&g);
        assert_eq!(n.triples()[0].object, Term::typed("1", XSD_INTEGER));
    }

    #[test]
    fn literal_canonicalization_can_merge_triples() {
        let g = parse_turtle_strict("<http://s> <http://p> 1, 01, +1 .").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(normalize(&g).len(), 1);
    }

    #[test]
    fn serde_round_trip() {
        let g = parse_turtle_strict("_:b <http://p> \"x\"@en . <http://s> <http://p> _:b .").unwrap();
        let n = normalize(&g);
        let json = serde_json::to_string(&n).unwrap();
        let back: NormalizedTripleSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, n);
    }
}
