//! Statement-level recovery for partially invalid Turtle.

use std::ops::Range;

use super::parser::{is_pn_chars, parse_range, ParseError, ParserState};
use super::term::Graph;

/// Outcome of one statement unit during salvage parsing.
#[derive(Debug, Clone)]
pub struct SalvageUnit {
    pub span: Range<usize>,
    pub error: Option<ParseError>,
    pub triple_count: usize,
}

impl SalvageUnit {
    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Debug, Clone, Default)]
pub struct SalvageReport {
    pub graph: Graph,
    pub units: Vec<SalvageUnit>,
}

impl SalvageReport {
    pub fn failed_statements(&self) -> usize {
        self.units.iter().filter(|u| !u.is_ok()).count()
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Scan {
    Normal,
    Iri,
    Short(char),
    Long(char),
    Comment,
}

/// Splits a document into statement units at top-level `.` terminators.
///
/// A `.` terminates a statement when it is outside strings, IRI brackets and
/// comments and is not followed by a character that could continue a name
/// or number. IRI brackets end at whitespace and short strings end at a line
/// break so a single unclosed token does not swallow the rest of the
/// document. Units holding only whitespace and comments are dropped.
pub fn split_statements(text: &str) -> Vec<Range<usize>> {
    let mut units = Vec::new();
    let mut state = Scan::Normal;
    let mut start = 0;
    let mut significant = false;
    let mut iter = text.char_indices().peekable();
    while let Some((i, c)) = iter.next() {
        match state {
            Scan::Normal => match c {
                '#' => state = Scan::Comment,
                '<' => {
                    significant = true;
                    state = Scan::Iri;
                }
                '"' | '\'' => {
                    significant = true;
                    let rest = &text[i + 1..];
                    let double = if c == '"' { "\"\"" } else { "''" };
                    if rest.starts_with(double) {
                        iter.next();
                        iter.next();
                        state = Scan::Long(c);
                    } else {
                        state = Scan::Short(c);
                    }
                }
                '.' => {
                    let next = iter.peek().map(|&(_, n)| n);
                    let continues = next.is_some_and(|n| {
                        is_pn_chars(n) || matches!(n, ':' | '%' | '\\')
                    });
                    if continues {
                        significant = true;
                    } else {
                        units.push(start..i + 1);
                        start = i + 1;
                        significant = false;
                    }
                }
                c if c.is_whitespace() => {}
                _ => significant = true,
            },
            Scan::Iri => {
                if c == '>' || c.is_whitespace() {
                    state = Scan::Normal;
                }
            }
            Scan::Short(q) => {
                if c == '\\' {
                    iter.next();
                } else if c == q || c == '\n' || c == '\r' {
                    state = Scan::Normal;
                }
            }
            Scan::Long(q) => {
                if c == '\\' {
                    iter.next();
                } else if c == q && text[i + 1..].starts_with([q, q]) {
                    iter.next();
                    iter.next();
                    state = Scan::Normal;
                }
            }
            Scan::Comment => {
                if c == '\n' || c == '\r' {
                    state = Scan::Normal;
                }
            }
        }
    }
    if significant {
        units.push(start..text.len());
    }
    units.retain(|u| has_content(&text[u.clone()]));
    units
}

fn has_content(unit: &str) -> bool {
    let mut in_comment = false;
    for c in unit.chars() {
        if in_comment {
            if c == '\n' || c == '\r' {
                in_comment = false;
            }
        } else if c == '#' {
            in_comment = true;
        } else if !c.is_whitespace() {
            return true;
        }
    }
    false
}

/// Parses every statement unit independently, keeping the union of triples
/// from units that parse and the accumulated prefix table. Never fails.
pub fn salvage_parse_turtle(text: &str) -> (Graph, usize) {
    let report = salvage_report(text);
    let failed = report.failed_statements();
    (report.graph, failed)
}

/// Like [`salvage_parse_turtle`], also returning the per-unit outcome.
pub fn salvage_report(text: &str) -> SalvageReport {
    let mut state = ParserState::default();
    let mut graph = Graph::new();
    let mut units = Vec::new();
    for span in split_statements(text) {
        match parse_range(text, span.start, span.end, &mut state) {
            Ok(triples) => {
                let triple_count = triples.len();
                for t in triples {
                    graph.insert(t);
                }
                units.push(SalvageUnit {
                    span,
                    error: None,
                    triple_count,
                });
            }
            Err(error) => units.push(SalvageUnit {
                span,
                error: Some(error),
                triple_count: 0,
            }),
        }
    }
    for (p, ns) in state.prefixes {
        graph.set_prefix(p, ns);
    }
    SalvageReport { graph, units }
}
