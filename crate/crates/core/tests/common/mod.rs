//! Shared generators and brute-force oracles for integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use kgbench::rdf::{Graph, Literal, Term, Triple};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EX: &str = "http://example.org/test/";

fn iri(local: &str) -> Term {
    Term::iri(format!("{EX}{local}"))
}

/// Random literal already in canonical lexical form, so literal
/// normalization never merges two generated triples.
fn literal(rng: &mut ChaCha8Rng) -> Term {
    match rng.gen_range(0..7) {
        0 => Term::literal(["alpha", "beta", "gamma"][rng.gen_range(0..3)]),
        1 => Term::literal("quote \" backslash \\ newline \n tab \t é"),
        2 => Term::Literal(Literal::lang("hallo", ["de", "en-gb"][rng.gen_range(0..2)])),
        3 => Term::typed(rng.gen_range(-20i32..20).to_string(), "http://www.w3.org/2001/XMLSchema#integer"),
        4 => Term::typed(["1.5", "-0.25", "3.0"][rng.gen_range(0..3)], "http://www.w3.org/2001/XMLSchema#decimal"),
        5 => Term::typed(["true", "false"][rng.gen_range(0..2)], "http://www.w3.org/2001/XMLSchema#boolean"),
        _ => Term::typed("2023-09-20", "http://www.w3.org/2001/XMLSchema#date"),
    }
}

/// Small random graph over a tiny vocabulary so that independently drawn
/// graphs overlap. At most `max_blanks` distinct blank nodes.
pub fn random_graph(rng: &mut ChaCha8Rng, max_triples: usize, max_blanks: usize) -> Graph {
    let blanks = rng.gen_range(0..=max_blanks);
    let node = |rng: &mut ChaCha8Rng| -> Term {
        if blanks > 0 && rng.gen_bool(0.45) {
            Term::blank(format!("n{}", rng.gen_range(0..blanks)))
        } else {
            iri(&format!("s{}", rng.gen_range(0..3)))
        }
    };
    let count = rng.gen_range(0..=max_triples);
    let mut g = Graph::new();
    for _ in 0..count {
        let subject = node(rng);
        let predicate = iri(&format!("p{}", rng.gen_range(0..2)));
        let object = match rng.gen_range(0..3) {
            0 => literal(rng),
            _ => node(rng),
        };
        g.insert(Triple::new(subject, predicate, object));
    }
    g.set_prefix("t", EX);
    g
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn relabel_randomly(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let labels: Vec<String> = g.blank_labels().into_iter().map(String::from).collect();
    let mut fresh: Vec<String> = (0..labels.len()).map(|i| format!("r{i}x")).collect();
    fresh.shuffle(rng);
    g.map_blanks(|b| {
        let i = labels.iter().position(|l| l == b).unwrap();
        fresh[i].clone()
    })
}

fn injections(n: usize, targets: usize) -> Vec<Vec<Option<usize>>> {
    // Every injective partial map from n sources into `targets` slots.
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(n: usize, targets: usize, used: &mut Vec<bool>, current: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        current.push(None);
        rec(n, targets, used, current, out);
        current.pop();
        for t in 0..targets {
            if !used[t] {
                used[t] = true;
                current.push(Some(t));
                rec(n, targets, used, current, out);
                current.pop();
                used[t] = false;
            }
        }
    }
    rec(n, targets, &mut vec![false; targets], &mut current, &mut out);
    out
}

fn line(t: &Triple) -> String {
    format!("{} {} {}", t.subject, t.predicate, t.object)
}

/// Maximum F1 over every injective mapping of candidate blank nodes onto
/// reference blank nodes (unmapped blanks match nothing). Exponential; only
/// for graphs with a handful of blank nodes.
pub fn brute_force_best_f1(candidate: &Graph, reference: &Graph) -> f64 {
    let cand_labels: Vec<String> = candidate.blank_labels().into_iter().map(String::from).collect();
    let ref_labels: Vec<String> = reference.blank_labels().into_iter().map(String::from).collect();
    let reference_lines: HashSet<String> = reference.iter().map(line).collect();
    let mut best = if candidate.is_empty() && reference.is_empty() { 1.0 } else { 0.0 };
    for map in injections(cand_labels.len(), ref_labels.len()) {
        let mapped = candidate.map_blanks(|b| {
            let i = cand_labels.iter().position(|l| l == b).unwrap();
            match map[i] {
                Some(r) => ref_labels[r].clone(),
                None => format!("unmatched-{i}"),
            }
        });
        let cand_lines: BTreeSet<String> = mapped.iter().map(line).collect();
        let tp = cand_lines.iter().filter(|l| reference_lines.contains(*l)).count() as f64;
        if tp == 0.0 {
            continue;
        }
        let precision = tp / cand_lines.len() as f64;
        let recall = tp / reference_lines.len() as f64;
        let f1 = 2.0 * precision * recall / (precision + recall);
        if f1 > best {
            best = f1;
        }
    }
    best
}

/// Independent FOAF graph builder: `persons` typed persons, `links` knows
/// triples drawn from a ring (capped by the ring size times persons − 1).
pub fn foaf_graph(persons: usize, links: usize) -> Graph {
    const FOAF: &str = "http://xmlns.com/foaf/0.1/";
    let person = |i: usize| Term::iri(format!("http://example.org/test/person/{i}"));
    let mut g = Graph::new();
    for i in 0..persons {
        g.insert(Triple::new(
            person(i),
            Term::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"),
            Term::iri(format!("{FOAF}Person")),
        ));
    }
    let mut made = 0;
    'outer: for step in 1..persons {
        for i in 0..persons {
            if made == links {
                break 'outer;
            }
            g.insert(Triple::new(person(i), Term::iri(format!("{FOAF}knows")), person((i + step) % persons)));
            made += 1;
        }
    }
    g
}
