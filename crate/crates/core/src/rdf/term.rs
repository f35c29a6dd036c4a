use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::vocab::{RDF_LANG_STRING, XSD_STRING};

/// An RDF term.
///
/// Literals always carry a datatype; a language tag is only present when the
/// datatype is `rdf:langString`, and is stored lowercased.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(String),
    Literal(Literal),
    Blank(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub lexical: String,
    pub datatype: String,
    pub language: Option<String>,
}

impl Literal {
    pub fn simple(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: XSD_STRING.to_string(),
            language: None,
        }
    }

    pub fn typed(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: datatype.into(),
            language: None,
        }
    }

    pub fn lang(lexical: impl Into<String>, language: &str) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: RDF_LANG_STRING.to_string(),
            language: Some(language.to_ascii_lowercase()),
        }
    }
}

impl Term {
    pub fn iri(value: impl Into<String>) -> Self {
        Term::Iri(value.into())
    }

    pub fn blank(label: impl Into<String>) -> Self {
        Term::Blank(label.into())
    }

    pub fn literal(lexical: impl Into<String>) -> Self {
        Term::Literal(Literal::simple(lexical))
    }

    pub fn typed(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        Term::Literal(Literal::typed(lexical, datatype))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_blank(&self) -> Option<&str> {
        match self {
            Term::Blank(label) => Some(label),
            _ => None,
        }
    }

    /// Single-character discriminant used as the initial blank-node signature
    /// and in canonical serializations.
    pub fn kind(&self) -> char {
        match self {
            Term::Iri(_) => 'I',
            Term::Literal(_) => 'L',
            Term::Blank(_) => 'B',
        }
    }
}

/// N-Triples rendering; this is the canonical serialization used for
/// sorting and hashing.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{}>", escape_iri(iri)),
            Term::Blank(label) => write!(f, "_:{label}"),
            Term::Literal(lit) => {
                write!(f, "\"{}\"", escape_string(&lit.lexical))?;
                match &lit.language {
                    Some(lang) => write!(f, "@{lang}"),
                    None if lit.datatype == XSD_STRING => Ok(()),
                    None => write!(f, "^^<{}>", escape_iri(&lit.datatype)),
                }
            }
        }
    }
}

pub(crate) fn escape_string(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for c in value.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '\u{8}' => out.push_str("\\b"),
            '\u{c}' => out.push_str("\\f"),
            c if (c as u32) < 0x20 || c == '\u{7f}' => {
                out.push_str(&format!("\\u{:04X}", c as u32));
            }
            c => out.push(c),
        }
    }
    out
}

pub(crate) fn escape_iri(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for c in value.chars() {
        if (c as u32) <= 0x20 || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') {
            out.push_str(&format!("\\u{:04X}", c as u32));
        } else {
            out.push(c);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Self {
        debug_assert!(!matches!(subject, Term::Literal(_)), "literal subject");
        debug_assert!(matches!(predicate, Term::Iri(_)), "non-IRI predicate");
        Triple {
            subject,
            predicate,
            object,
        }
    }

    pub fn has_blank(&self) -> bool {
        self.subject.is_blank() || self.object.is_blank()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// A set of triples plus the prefix table seen while parsing.
///
/// Equality only looks at the triples.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    prefixes: BTreeMap<String, String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `true` if the triple was not already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn set_prefix(&mut self, prefix: impl Into<String>, namespace: impl Into<String>) {
        self.prefixes.insert(prefix.into(), namespace.into());
    }

    pub fn extend(&mut self, other: Graph) {
        self.triples.extend(other.triples);
        for (k, v) in other.prefixes {
            self.prefixes.entry(k).or_insert(v);
        }
    }

    /// Distinct blank labels, in label order.
    pub fn blank_labels(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for t in &self.triples {
            if let Term::Blank(b) = &t.subject {
                out.insert(b.as_str());
            }
            if let Term::Blank(b) = &t.object {
                out.insert(b.as_str());
            }
        }
        out
    }

    pub fn map_blanks(&self, mut rename: impl FnMut(&str) -> String) -> Graph {
        let mut map_term = |term: &Term| match term {
            Term::Blank(b) => Term::Blank(rename(b)),
            other => other.clone(),
        };
        let triples = self
            .triples
            .iter()
            .map(|t| Triple {
                subject: map_term(&t.subject),
                predicate: t.predicate.clone(),
                object: map_term(&t.object),
            })
            .collect();
        Graph {
            triples,
            prefixes: self.prefixes.clone(),
        }
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Graph {
            triples: iter.into_iter().collect(),
            prefixes: BTreeMap::new(),
        }
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = std::collections::btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_identity_ignores_prefixes() {
        let t = Triple::new(Term::iri("http://a"), Term::iri("http://p"), Term::literal("x"));
        let mut a: Graph = [t.clone()].into_iter().collect();
        let b: Graph = [t.clone(), t].into_iter().collect();
        a.set_prefix("ex", "http://ex.org/");
        assert_eq!(a, b);
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn ntriples_rendering() {
        assert_eq!(Term::literal("a\"b\n").to_string(), r#""a\"b\n""#);
        assert_eq!(Term::Literal(Literal::lang("hi", "EN-gb")).to_string(), "\"hi\"@en-gb");
        assert_eq!(
            Term::typed("1", "http://www.w3.org/2001/XMLSchema#integer").to_string(),
            "\"1\"^^<http://www.w3.org/2001/XMLSchema#integer>"
        );
    }
}
