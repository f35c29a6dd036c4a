//! Turtle parser.
//!
//! Covers directives (`@prefix`, `@base` and the SPARQL-style forms), IRIs,
//! prefixed names, blank node labels, `[]` property lists, collections,
//! short and long strings with escapes, language tags, typed literals and
//! the numeric/boolean shorthands. Quoted triples are not supported.

use std::collections::BTreeMap;

use super::iri;
use super::term::{Graph, Literal, Term, Triple};
use super::vocab::{
    RDF_FIRST, RDF_NIL, RDF_REST, RDF_TYPE, XSD_BOOLEAN, XSD_DECIMAL, XSD_DOUBLE, XSD_INTEGER,
};

/// First grammar violation in a document. Rendered as `line:col: message`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Parse state that outlives a single statement: base IRI, prefix table and
/// the counter for anonymous blank nodes.
#[derive(Debug, Clone, Default)]
pub(crate) struct ParserState {
    pub base: Option<String>,
    pub prefixes: BTreeMap<String, String>,
    pub anon_counter: usize,
}

/// Parses a complete Turtle document.
pub fn parse_turtle_strict(text: &str) -> Result<Graph, ParseError> {
    let mut state = ParserState::default();
    let triples = parse_range(text, 0, text.len(), &mut state)?;
    let mut graph: Graph = triples.into_iter().collect();
    for (p, ns) in state.prefixes {
        graph.set_prefix(p, ns);
    }
    Ok(graph)
}

/// Parses `text[start..end]` as a sequence of statements. `state` is only
/// updated when the whole range parses.
pub(crate) fn parse_range(
    text: &str,
    start: usize,
    end: usize,
    state: &mut ParserState,
) -> Result<Vec<Triple>, ParseError> {
    let mut parser = Parser {
        text,
        pos: start,
        end,
        state: state.clone(),
        out: Vec::new(),
    };
    parser.document()?;
    let Parser { state: s, out, .. } = parser;
    *state = s;
    Ok(out)
}

fn position(text: &str, pos: usize) -> (usize, usize) {
    let before = &text[..pos.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    let column = before[line_start..].chars().count() + 1;
    (line, column)
}

pub(crate) fn is_pn_chars_base(c: char) -> bool {
    matches!(c,
        'A'..='Z' | 'a'..='z'
        | '\u{00C0}'..='\u{00D6}' | '\u{00D8}'..='\u{00F6}' | '\u{00F8}'..='\u{02FF}'
        | '\u{0370}'..='\u{037D}' | '\u{037F}'..='\u{1FFF}' | '\u{200C}'..='\u{200D}'
        | '\u{2070}'..='\u{218F}' | '\u{2C00}'..='\u{2FEF}' | '\u{3001}'..='\u{D7FF}'
        | '\u{F900}'..='\u{FDCF}' | '\u{FDF0}'..='\u{FFFD}' | '\u{10000}'..='\u{EFFFF}')
}

pub(crate) fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_'
}

pub(crate) fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c)
        || c == '-'
        || c.is_ascii_digit()
        || c == '\u{00B7}'
        || ('\u{0300}'..='\u{036F}').contains(&c)
        || ('\u{203F}'..='\u{2040}').contains(&c)
}

const LOCAL_ESCAPABLE: &str = "_~.-!$&'()*+,;=/?#@%";

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    end: usize,
    state: ParserState,
    out: Vec<Triple>,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..self.end]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn error_at<T>(&self, pos: usize, message: impl Into<String>) -> PResult<T> {
        let (line, column) = position(self.text, pos);
        Err(ParseError {
            line,
            column,
            message: message.into(),
        })
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        self.error_at(self.pos, message)
    }

    fn unexpected<T>(&self, expected: &str) -> PResult<T> {
        match self.peek() {
            Some(c) => self.error(format!("expected {expected}, found {c:?}")),
            None => self.error(format!("expected {expected}, found end of input")),
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.unexpected(&format!("'{c}'"))
        }
    }

    fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' || c == '\r' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    fn fresh_blank(&mut self) -> Term {
        let label = format!("anon%{}", self.state.anon_counter);
        self.state.anon_counter += 1;
        Term::Blank(label)
    }

    fn emit(&mut self, subject: Term, predicate: Term, object: Term) {
        self.out.push(Triple::new(subject, predicate, object));
    }

    fn document(&mut self) -> PResult<()> {
        loop {
            self.skip_ws();
            if self.pos >= self.end {
                return Ok(());
            }
            self.statement()?;
        }
    }

    fn keyword_ci(&self, word: &str) -> bool {
        let rest = self.rest();
        rest.len() >= word.len()
            && rest.is_char_boundary(word.len())
            && rest[..word.len()].eq_ignore_ascii_case(word)
            && rest[word.len()..]
                .chars()
                .next()
                .is_some_and(|c| c.is_whitespace() || c == '<' || c == '#')
    }

    fn statement(&mut self) -> PResult<()> {
        if self.peek() == Some('@') {
            let start = self.pos;
            self.bump();
            let word: String = self.take_while(|c| c.is_ascii_alphabetic());
            match word.as_str() {
                "prefix" => self.prefix_decl()?,
                "base" => self.base_decl()?,
                _ => return self.error_at(start, format!("unknown directive '@{word}'")),
            }
            self.skip_ws();
            return self.expect('.');
        }
        if self.keyword_ci("PREFIX") {
            self.pos += "PREFIX".len();
            return self.prefix_decl();
        }
        if self.keyword_ci("BASE") {
            self.pos += "BASE".len();
            return self.base_decl();
        }
        self.triples()?;
        self.skip_ws();
        self.expect('.')
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    fn prefix_decl(&mut self) -> PResult<()> {
        self.skip_ws();
        let start = self.pos;
        let prefix = self.pn_prefix();
        if self.peek() != Some(':') {
            return self.unexpected("prefix name followed by ':'");
        }
        self.bump();
        if prefix.ends_with('.') {
            return self.error_at(start, "prefix name must not end with '.'");
        }
        self.skip_ws();
        let ns = self.iriref()?;
        self.state.prefixes.insert(prefix, ns);
        Ok(())
    }

    fn base_decl(&mut self) -> PResult<()> {
        self.skip_ws();
        let base = self.iriref()?;
        self.state.base = Some(base);
        Ok(())
    }

    /// PN_PREFIX, possibly empty. Leaves the cursor on the ':'.
    fn pn_prefix(&mut self) -> String {
        let mut out = String::new();
        if let Some(c) = self.peek() {
            if is_pn_chars_base(c) {
                out.push(c);
                self.bump();
                while let Some(c) = self.peek() {
                    if is_pn_chars(c) || c == '.' {
                        out.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
        }
        out
    }

    fn triples(&mut self) -> PResult<()> {
        match self.peek() {
            Some('[') => {
                let save = self.pos;
                self.bump();
                self.skip_ws();
                if self.peek() == Some(']') {
                    self.bump();
                    let subject = self.fresh_blank();
                    self.skip_ws();
                    self.predicate_object_list(&subject)
                } else {
                    self.pos = save;
                    let subject = self.blank_node_property_list()?;
                    self.skip_ws();
                    if self.peek() == Some('.') {
                        Ok(())
                    } else {
                        self.predicate_object_list(&subject)
                    }
                }
            }
            _ => {
                let subject = self.subject()?;
                self.skip_ws();
                self.predicate_object_list(&subject)
            }
        }
    }

    fn subject(&mut self) -> PResult<Term> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some('_') if self.peek_at(1) == Some(':') => self.blank_label(),
            Some('(') => self.collection(),
            Some('"') | Some('\'') => self.error("literal is not allowed as subject"),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => {
                self.error("literal is not allowed as subject")
            }
            Some(_) => {
                if self.at_boolean().is_some() {
                    return self.error("literal is not allowed as subject");
                }
                Ok(Term::Iri(self.prefixed_name()?))
            }
            None => self.unexpected("subject"),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> PResult<()> {
        let verb = self.verb()?;
        self.skip_ws();
        self.object_list(subject, &verb)?;
        loop {
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            match self.peek() {
                Some('.') | Some(']') | None => return Ok(()),
                _ => {}
            }
            let verb = self.verb()?;
            self.skip_ws();
            self.object_list(subject, &verb)?;
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &Term) -> PResult<()> {
        loop {
            let object = self.object()?;
            self.emit(subject.clone(), predicate.clone(), object);
            self.skip_ws();
            if self.peek() == Some(',') {
                self.bump();
                self.skip_ws();
            } else {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> PResult<Term> {
        if self.peek() == Some('a') {
            let next = self.peek_at(1);
            let continues_name = next.is_some_and(|c| is_pn_chars(c) || c == '.' || c == ':');
            if !continues_name {
                self.bump();
                return Ok(Term::iri(RDF_TYPE));
            }
        }
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some(c) if c == ':' || is_pn_chars_base(c) => Ok(Term::Iri(self.prefixed_name()?)),
            _ => self.unexpected("predicate"),
        }
    }

    fn object(&mut self) -> PResult<Term> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some('_') if self.peek_at(1) == Some(':') => self.blank_label(),
            Some('[') => {
                let save = self.pos;
                self.bump();
                self.skip_ws();
                if self.peek() == Some(']') {
                    self.bump();
                    Ok(self.fresh_blank())
                } else {
                    self.pos = save;
                    self.blank_node_property_list()
                }
            }
            Some('(') => self.collection(),
            Some('"') | Some('\'') => self.rdf_literal(),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' || c == '.' => self.numeric(),
            Some(c) if c == ':' || is_pn_chars_base(c) => {
                if let Some(value) = self.at_boolean() {
                    self.pos += value.len();
                    return Ok(Term::typed(value, XSD_BOOLEAN));
                }
                Ok(Term::Iri(self.prefixed_name()?))
            }
            _ => self.unexpected("object"),
        }
    }

    fn at_boolean(&self) -> Option<&'static str> {
        ["true", "false"].into_iter().find(|word| {
            self.rest()
                .strip_prefix(word)
                .is_some_and(|after| !after.starts_with(|c: char| is_pn_chars(c) || c == ':'))
        })
    }

    fn blank_node_property_list(&mut self) -> PResult<Term> {
        self.expect('[')?;
        self.skip_ws();
        let node = self.fresh_blank();
        self.predicate_object_list(&node)?;
        self.skip_ws();
        self.expect(']')?;
        Ok(node)
    }

    fn collection(&mut self) -> PResult<Term> {
        self.expect('(')?;
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(')') => {
                    self.bump();
                    break;
                }
                None => return self.unexpected("')'"),
                _ => items.push(self.object()?),
            }
        }
        if items.is_empty() {
            return Ok(Term::iri(RDF_NIL));
        }
        let nodes: Vec<Term> = items.iter().map(|_| self.fresh_blank()).collect();
        for (i, item) in items.into_iter().enumerate() {
            self.emit(nodes[i].clone(), Term::iri(RDF_FIRST), item);
            let rest = nodes.get(i + 1).cloned().unwrap_or_else(|| Term::iri(RDF_NIL));
            self.emit(nodes[i].clone(), Term::iri(RDF_REST), rest);
        }
        Ok(nodes[0].clone())
    }

    fn blank_label(&mut self) -> PResult<Term> {
        self.pos += 2;
        let start = self.pos;
        let mut label = String::new();
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c.is_ascii_digit() => {
                label.push(c);
                self.bump();
            }
            _ => return self.unexpected("blank node label"),
        }
        while let Some(c) = self.peek() {
            if is_pn_chars(c) || c == '.' {
                label.push(c);
                self.bump();
            } else {
                break;
            }
        }
        while label.ends_with('.') {
            label.pop();
            self.pos -= 1;
        }
        debug_assert!(self.pos > start);
        Ok(Term::Blank(label))
    }

    fn uchar(&mut self, len: usize) -> PResult<char> {
        let start = self.pos;
        let hex: String = self.rest().chars().take(len).collect();
        if hex.len() != len || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
            return self.error_at(start, "invalid unicode escape");
        }
        self.pos += len;
        let code = u32::from_str_radix(&hex, 16).expect("checked hex");
        char::from_u32(code)
            .map_or_else(|| self.error_at(start, "escape is not a valid code point"), Ok)
    }

    fn iriref(&mut self) -> PResult<String> {
        let start = self.pos;
        if self.peek() != Some('<') {
            return self.unexpected("IRI");
        }
        self.bump();
        let mut value = String::new();
        loop {
            match self.bump() {
                None => return self.error_at(start, "unterminated IRI"),
                Some('>') => break,
                Some('\\') => {
                    let c = match self.bump() {
                        Some('u') => self.uchar(4)?,
                        Some('U') => self.uchar(8)?,
                        _ => return self.error("invalid escape in IRI"),
                    };
                    if (c as u32) <= 0x20 || "<>\"{}|^`\\".contains(c) {
                        return self.error("escaped character not allowed in IRI");
                    }
                    value.push(c);
                }
                Some(c) if (c as u32) <= 0x20 || "<\"{}|^`".contains(c) => {
                    return self.error_at(self.pos - c.len_utf8(), format!("character {c:?} not allowed in IRI"));
                }
                Some(c) => value.push(c),
            }
        }
        self.absolutize(value, start)
    }

    fn absolutize(&self, value: String, at: usize) -> PResult<String> {
        if iri::is_absolute(&value) {
            return Ok(value);
        }
        match &self.state.base {
            Some(base) => Ok(iri::resolve(base, &value)),
            None => self.error_at(at, format!("relative IRI <{value}> without a base")),
        }
    }

    fn prefixed_name(&mut self) -> PResult<String> {
        let start = self.pos;
        let prefix = self.pn_prefix();
        if self.peek() != Some(':') {
            self.pos = start;
            return self.unexpected("prefixed name");
        }
        if prefix.ends_with('.') {
            return self.error_at(start, "prefix name must not end with '.'");
        }
        self.bump();
        let local = self.pn_local()?;
        match self.state.prefixes.get(&prefix) {
            Some(ns) => {
                let full = format!("{ns}{local}");
                self.absolutize(full, start)
            }
            None => self.error_at(start, format!("undefined prefix '{prefix}:'")),
        }
    }

    fn pn_local(&mut self) -> PResult<String> {
        let mut value = String::new();
        // Raw byte offsets of unescaped trailing dots, so they can be returned.
        let mut first = true;
        let mut trailing_dots = 0usize;
        while let Some(c) = self.peek() {
            let accepted = if first {
                is_pn_chars_u(c) || c == ':' || c.is_ascii_digit() || c == '%' || c == '\\'
            } else {
                is_pn_chars(c) || c == '.' || c == ':' || c == '%' || c == '\\'
            };
            if !accepted {
                break;
            }
            match c {
                '%' => {
                    let hex: String = self.rest().chars().skip(1).take(2).collect();
                    if hex.len() != 2 || !hex.chars().all(|h| h.is_ascii_hexdigit()) {
                        return self.error("invalid percent escape in local name");
                    }
                    value.push('%');
                    value.push_str(&hex);
                    self.pos += 3;
                    trailing_dots = 0;
                }
                '\\' => {
                    let e = self.peek_at(1);
                    match e {
                        Some(e) if LOCAL_ESCAPABLE.contains(e) => {
                            value.push(e);
                            self.pos += 1 + e.len_utf8();
                            trailing_dots = 0;
                        }
                        _ => return self.error("invalid escape in local name"),
                    }
                }
                '.' => {
                    value.push('.');
                    self.bump();
                    trailing_dots += 1;
                }
                c => {
                    value.push(c);
                    self.bump();
                    trailing_dots = 0;
                }
            }
            first = false;
        }
        for _ in 0..trailing_dots {
            value.pop();
            self.pos -= 1;
        }
        Ok(value)
    }

    fn rdf_literal(&mut self) -> PResult<Term> {
        let lexical = self.string()?;
        match self.peek() {
            Some('@') => {
                self.bump();
                let start = self.pos;
                let mut tag = self.take_while(|c| c.is_ascii_alphabetic());
                if tag.is_empty() {
                    return self.error_at(start, "empty language tag");
                }
                while self.peek() == Some('-') {
                    let sub: String = self.rest()[1..]
                        .chars()
                        .take_while(|c| c.is_ascii_alphanumeric())
                        .collect();
                    if sub.is_empty() {
                        return self.error("invalid language tag");
                    }
                    self.pos += 1 + sub.len();
                    tag.push('-');
                    tag.push_str(&sub);
                }
                Ok(Term::Literal(Literal::lang(lexical, &tag)))
            }
            Some('^') => {
                self.bump();
                self.expect('^')?;
                let datatype = match self.peek() {
                    Some('<') => self.iriref()?,
                    _ => self.prefixed_name()?,
                };
                Ok(Term::Literal(Literal::typed(lexical, datatype)))
            }
            _ => Ok(Term::literal(lexical)),
        }
    }

    fn string(&mut self) -> PResult<String> {
        let start = self.pos;
        let quote = self.bump().expect("caller checked quote");
        let long = self.peek() == Some(quote) && self.peek_at(1) == Some(quote);
        if long {
            self.pos += 2;
        }
        let mut value = String::new();
        loop {
            let c = match self.bump() {
                Some(c) => c,
                None => return self.error_at(start, "unterminated string literal"),
            };
            match c {
                c if c == quote => {
                    if !long {
                        return Ok(value);
                    }
                    if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) {
                        self.pos += 2;
                        // A long string may end with up to two extra quotes.
                        while self.peek() == Some(quote) {
                            value.push(quote);
                            self.bump();
                        }
                        return Ok(value);
                    }
                    value.push(c);
                }
                '\\' => {
                    let escaped = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.uchar(4)?,
                        Some('U') => self.uchar(8)?,
                        _ => return self.error("invalid escape sequence in string"),
                    };
                    value.push(escaped);
                }
                '\n' | '\r' if !long => {
                    return self.error_at(start, "unterminated string literal");
                }
                c => value.push(c),
            }
        }
    }

    fn numeric(&mut self) -> PResult<Term> {
        let start = self.pos;
        let mut lexical = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            lexical.push(c);
            self.bump();
        }
        let int_part = self.take_while(|c| c.is_ascii_digit());
        lexical.push_str(&int_part);
        let mut datatype = XSD_INTEGER;
        if self.peek() == Some('.') {
            let after = self.peek_at(1);
            let exponent_after_dot = !int_part.is_empty()
                && matches!(after, Some('e' | 'E'))
                && self.exponent_len(self.pos + 1).is_some();
            if after.is_some_and(|c| c.is_ascii_digit()) {
                self.bump();
                lexical.push('.');
                lexical.push_str(&self.take_while(|c| c.is_ascii_digit()));
                datatype = XSD_DECIMAL;
            } else if exponent_after_dot {
                self.bump();
                lexical.push('.');
                datatype = XSD_DECIMAL;
            }
        }
        if int_part.is_empty() && datatype == XSD_INTEGER {
            return self.error_at(start, "invalid numeric literal");
        }
        if let Some(len) = self.exponent_len(self.pos) {
            lexical.push_str(&self.text[self.pos..self.pos + len]);
            self.pos += len;
            datatype = XSD_DOUBLE;
        }
        Ok(Term::typed(lexical, datatype))
    }

    fn exponent_len(&self, at: usize) -> Option<usize> {
        let s = self.text.get(at..self.end)?;
        let mut chars = s.chars();
        if !matches!(chars.next(), Some('e' | 'E')) {
            return None;
        }
        let mut len = 1;
        let rest = &s[1..];
        let rest = if let Some(r) = rest.strip_prefix(['+', '-']) {
            len += 1;
            r
        } else {
            rest
        };
        let digits = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        (digits > 0).then_some(len + digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::vocab::{RDF_LANG_STRING, XSD_STRING};

    fn parse(text: &str) -> Graph {
        parse_turtle_strict(text).unwrap_or_else(|e| panic!("{e}\n{text}"))
    }

    #[test]
    fn single_prefixed_triple() {
        let g = parse("@prefix ex: <http://ex.org/> . ex:a ex:p ex:b .");
        let expected = Triple::new(
            Term::iri("http://ex.org/a"),
            Term::iri("http://ex.org/p"),
            Term::iri("http://ex.org/b"),
        );
        assert_eq!(g.len(), 1);
        assert!(g.contains(&expected));
        assert_eq!(g.prefixes().get("ex").map(String::as_str), Some("http://ex.org/"));
    }

    #[test]
    fn empty_document() {
        assert!(parse("").is_empty());
        assert!(parse("  # only a comment\n").is_empty());
    }

    #[test]
    fn undefined_prefix_reports_line_one() {
        let err = parse_turtle_strict("ex:a ex:p ex:b .").unwrap_err();
        assert_eq!(err.line, 1);
        assert_eq!(err.column, 1);
        assert!(err.message.contains("undefined prefix"), "{err}");
        assert!(err.to_string().starts_with("1:1: "));
    }

    #[test]
    fn error_position_on_later_line() {
        let err = parse_turtle_strict("@prefix ex: <http://ex.org/> .\nex:a ex:p ex:b\nex:c ex:p ex:d .")
            .unwrap_err();
        assert_eq!((err.line, err.column), (3, 1));
    }

    #[test]
    fn abbreviations_and_lists() {
        let g = parse(
            "@prefix ex: <http://ex.org/> .\n\
             ex:a a ex:T ; ex:p ex:b , ex:c ; ex:q ( 1 2 ) ;; .\n\
             [ ex:p \"x\" ] ex:q [] .\n\
             ex:e ex:p () .",
        );
        // type + 2 p + q + 2*(first,rest) + bnode p + q + nil link
        assert_eq!(g.len(), 1 + 2 + 1 + 4 + 1 + 1 + 1);
        assert!(g.contains(&Triple::new(
            Term::iri("http://ex.org/e"),
            Term::iri("http://ex.org/p"),
            Term::iri(RDF_NIL)
        )));
    }

    #[test]
    fn literal_forms() {
        let g = parse(
            "@prefix ex: <http://ex.org/> . @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n\
             ex:s ex:p \"plain\", 'single', \"\"\"long \"quoted\"\nline\"\"\", \"hi\"@EN-gb,\n\
             \"5\"^^xsd:integer, -5, +1.5, .5, 1e3, 1.E3, true, false, \"\\u00e9\\t\" .",
        );
        let objects: Vec<&Term> = g.iter().map(|t| &t.object).collect();
        let has = |lex: &str, dt: &str| {
            objects.iter().any(|o| matches!(o, Term::Literal(l) if l.lexical == lex && l.datatype == dt))
        };
        assert!(has("plain", XSD_STRING));
        assert!(has("single", XSD_STRING));
        assert!(has("long \"quoted\"\nline", XSD_STRING));
        assert!(has("hi", RDF_LANG_STRING));
        assert!(has("5", XSD_INTEGER));
        assert!(has("-5", XSD_INTEGER));
        assert!(has("+1.5", XSD_DECIMAL));
        assert!(has(".5", XSD_DECIMAL));
        assert!(has("1e3", XSD_DOUBLE));
        assert!(has("1.E3", XSD_DOUBLE));
        assert!(has("true", XSD_BOOLEAN));
        assert!(has("false", XSD_BOOLEAN));
        assert!(has("é\t", XSD_STRING));
        let lang = objects.iter().find_map(|o| match o {
            Term::Literal(l) if l.language.is_some() => l.language.clone(),
            _ => None,
        });
        assert_eq!(lang.as_deref(), Some("en-gb"));
    }

    #[test]
    fn integer_followed_by_terminator() {
        let g = parse("@prefix ex: <http://ex.org/> . ex:s ex:p 1.");
        assert!(g.iter().any(|t| t.object == Term::typed("1", XSD_INTEGER)));
    }

    #[test]
    fn base_and_relative_iris() {
        let g = parse("@base <http://ex.org/dir/> . <a> <p> <../b> . BASE <http://other/> <c> <p> <d> .");
        assert!(g.contains(&Triple::new(
            Term::iri("http://ex.org/dir/a"),
            Term::iri("http://ex.org/dir/p"),
            Term::iri("http://ex.org/b")
        )));
        assert!(g.contains(&Triple::new(
            Term::iri("http://other/c"),
            Term::iri("http://other/p"),
            Term::iri("http://other/d")
        )));
        assert!(parse_turtle_strict("<a> <b> <c> .").is_err());
    }

    #[test]
    fn sparql_style_prefix() {
        let g = parse("PREFIX ex: <http://ex.org/>\nprefix : <http://d.org/>\nex:a :p ex:b .");
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn local_name_escapes_and_trailing_dot() {
        let g = parse("@prefix ex: <http://ex.org/> . ex:a\\-b ex:p ex:c.d.");
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject, Term::iri("http://ex.org/a-b"));
        assert_eq!(t.object, Term::iri("http://ex.org/c.d"));
    }

    #[test]
    fn blank_labels_are_shared_within_document() {
        let g = parse("@prefix ex: <http://ex.org/> . _:x ex:p _:y . _:y ex:p _:x .");
        assert_eq!(g.blank_labels().len(), 2);
    }

    #[test]
    fn rejections() {
        let bad = [
            "@prefix ex: <http://ex.org/> . ex:a ex:p ex:b",
            "@prefix ex: <http://ex.org/> . \"lit\" ex:p ex:b .",
            "@prefix ex: <http://ex.org/> . ex:a _:b ex:c .",
            "@prefix ex: <http://ex.org/> . ex:a ex:p \"open .",
            "@prefix ex: <http://ex.org/> . ex:a ex:p <http://x y> .",
            "@prefix ex <http://ex.org/> . ex:a ex:p ex:b .",
            "@prefix ex: <http://ex.org/> . ex:a ex:p ex:b ; ex:c .",
            "@prefix ex: <http://ex.org/> . ex:a ex:p ex:b , ex:q ex:c .",
            "@prefix ex: <http://ex.org/> . ex:a ex:p [ ex:q ex:r .",
            "@foo <http://x> .",
            "hello, the file is correct.",
        ];
        for doc in bad {
            assert!(parse_turtle_strict(doc).is_err(), "accepted: {doc}");
        }
    }
}
