//! Accept/reject verdicts and triple counts against a reference Turtle
//! parser, frozen in `data/turtle_corpus.json` (see `turtle_corpus.py`).

use kgbench::rdf::{parse_turtle_strict, salvage_parse_turtle};
use serde::Deserialize;

#[derive(Deserialize)]
struct Corpus {
    cases: Vec<Case>,
}

#[derive(Deserialize)]
struct Case {
    name: String,
    doc: String,
    accept: bool,
    triples: usize,
}

fn corpus() -> Vec<Case> {
    let raw = include_str!("data/turtle_corpus.json");
    serde_json::from_str::<Corpus>(raw).expect("corpus parses").cases
}

#[test]
fn corpus_size() {
    let cases = corpus();
    assert!(cases.iter().filter(|c| c.accept).count() >= 30);
    assert!(cases.iter().filter(|c| !c.accept).count() >= 10);
}

#[test]
fn verdicts_and_counts_match_reference() {
    let mut mismatches = Vec::new();
    for case in corpus() {
        match (parse_turtle_strict(&case.doc), case.accept) {
            (Ok(g), true) if g.len() == case.triples => {}
            (Ok(g), true) => mismatches.push(format!("{}: {} triples, expected {}", case.name, g.len(), case.triples)),
            (Ok(_), false) => mismatches.push(format!("{}: accepted, expected rejection", case.name)),
            (Err(e), true) => mismatches.push(format!("{}: rejected ({e}), expected acceptance", case.name)),
            (Err(_), false) => {}
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn salvage_agrees_with_strict_on_valid_documents() {
    for case in corpus().into_iter().filter(|c| c.accept) {
        let (g, failed) = salvage_parse_turtle(&case.doc);
        assert_eq!(failed, 0, "{}", case.name);
        assert_eq!(g, parse_turtle_strict(&case.doc).unwrap(), "{}", case.name);
    }
}
