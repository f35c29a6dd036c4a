use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use super::term::{escape_iri, escape_string, Graph, Literal, Term};
use super::vocab::{
    RDF_TYPE, WELL_KNOWN_PREFIXES, XSD_BOOLEAN, XSD_DECIMAL, XSD_DOUBLE, XSD_INTEGER, XSD_STRING,
};

struct Namespaces {
    /// (namespace, prefix), longest namespace first.
    entries: Vec<(String, String)>,
}

impl Namespaces {
    fn new(graph: &Graph) -> Self {
        let mut by_ns: BTreeMap<String, String> = BTreeMap::new();
        let mut taken: BTreeSet<String> = BTreeSet::new();
        for (prefix, ns) in graph.prefixes() {
            if !by_ns.contains_key(ns) && taken.insert(prefix.clone()) {
                by_ns.insert(ns.clone(), prefix.clone());
            }
        }
        for (prefix, ns) in WELL_KNOWN_PREFIXES {
            if !by_ns.contains_key(*ns) && !taken.contains(*prefix) {
                taken.insert(prefix.to_string());
                by_ns.insert(ns.to_string(), prefix.to_string());
            }
        }
        let mut entries: Vec<(String, String)> = by_ns.into_iter().collect();
        entries.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
        Namespaces { entries }
    }

    fn abbreviate(&self, iri: &str) -> Option<(&str, String)> {
        self.entries.iter().find_map(|(ns, prefix)| {
            let local = iri.strip_prefix(ns.as_str())?;
            safe_local(local).then(|| (prefix.as_str(), format!("{prefix}:{local}")))
        })
    }
}

fn safe_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        }
        Some(_) => false,
    }
}

fn matches_shape(lexical: &str, datatype: &str) -> bool {
    let unsigned = lexical.strip_prefix(['+', '-']).unwrap_or(lexical);
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    match datatype {
        XSD_INTEGER => digits(unsigned),
        XSD_DECIMAL => match unsigned.split_once('.') {
            Some((i, f)) => (i.is_empty() || digits(i)) && digits(f),
            None => false,
        },
        XSD_DOUBLE => {
            let Some(pos) = unsigned.find(['e', 'E']) else {
                return false;
            };
            let (mantissa, exponent) = (&unsigned[..pos], &unsigned[pos + 1..]);
            let exponent = exponent.strip_prefix(['+', '-']).unwrap_or(exponent);
            let mantissa_ok = match mantissa.split_once('.') {
                Some((i, f)) => (digits(i) && (f.is_empty() || digits(f))) || (i.is_empty() && digits(f)),
                None => digits(mantissa),
            };
            mantissa_ok && digits(exponent)
        }
        XSD_BOOLEAN => lexical == "true" || lexical == "false",
        _ => false,
    }
}

struct Writer<'a> {
    namespaces: &'a Namespaces,
    blanks: HashMap<&'a str, String>,
    used: BTreeSet<String>,
}

impl<'a> Writer<'a> {
    fn iri(&mut self, iri: &str) -> String {
        match self.namespaces.abbreviate(iri) {
            Some((prefix, short)) => {
                self.used.insert(prefix.to_string());
                short
            }
            None => format!("<{}>", escape_iri(iri)),
        }
    }

    fn literal(&mut self, lit: &Literal) -> String {
        let quoted = format!("\"{}\"", escape_string(&lit.lexical));
        if let Some(lang) = &lit.language {
            return format!("{quoted}@{lang}");
        }
        if lit.datatype == XSD_STRING {
            return quoted;
        }
        if matches_shape(&lit.lexical, &lit.datatype) {
            return lit.lexical.clone();
        }
        format!("{quoted}^^{}", self.iri(&lit.datatype))
    }

    fn term(&mut self, term: &'a Term) -> String {
        match term {
            Term::Iri(iri) => self.iri(iri),
            Term::Literal(lit) => self.literal(lit),
            Term::Blank(b) => format!("_:{}", self.blanks[b.as_str()]),
        }
    }
}

/// Serializes a graph as Turtle, one statement per subject, using `;` and
/// `,` abbreviations and the graph's prefix table plus the common RDF
/// prefixes. Blank nodes are written with fresh `_:bN` labels.
pub fn serialize_turtle(g: &Graph) -> String {
    let namespaces = Namespaces::new(g);
    let mut blanks = HashMap::new();
    for t in g {
        for term in [&t.subject, &t.object] {
            if let Term::Blank(b) = term {
                let next = blanks.len();
                blanks.entry(b.as_str()).or_insert_with(|| format!("b{next}"));
            }
        }
    }
    let mut writer = Writer {
        namespaces: &namespaces,
        blanks,
        used: BTreeSet::new(),
    };

    let mut by_subject: BTreeMap<&Term, BTreeMap<(bool, &Term), Vec<&Term>>> = BTreeMap::new();
    for t in g {
        let is_type = t.predicate.as_iri() == Some(RDF_TYPE);
        by_subject
            .entry(&t.subject)
            .or_default()
            .entry((!is_type, &t.predicate))
            .or_default()
            .push(&t.object);
    }

    let mut body = String::new();
    for (subject, predicates) in by_subject {
        let subject = writer.term(subject);
        let mut parts = Vec::new();
        for ((not_type, predicate), objects) in predicates {
            let verb = if not_type {
                writer.term(predicate)
            } else {
                "a".to_string()
            };
            let objects: Vec<String> = objects.into_iter().map(|o| writer.term(o)).collect();
            parts.push(format!("{verb} {}", objects.join(", ")));
        }
        let _ = writeln!(body, "{subject} {} .", parts.join(" ;\n    "));
    }

    let mut out = String::new();
    for (ns, prefix) in namespaces.entries.iter().rev() {
        if writer.used.contains(prefix) {
            let _ = writeln!(out, "@prefix {prefix}: <{}> .", escape_iri(ns));
        }
    }
    if !out.is_empty() && !body.is_empty() {
        out.push('\n');
    }
    out.push_str(&body);
    out
}
