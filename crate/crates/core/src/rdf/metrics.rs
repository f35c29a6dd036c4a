//! Precision/recall/F1 over normalized triple sets.
//!
//! Ground triples compare by equality. Triples that mention blank nodes are
//! compared after aligning candidate blank nodes to reference blank nodes:
//! the canonical labels give a starting alignment, and a bounded
//! branch-and-bound search over injective candidate→reference maps
//! improves it. Within [`ALIGNMENT_BUDGET`] search nodes the result is the
//! best possible overlap; beyond it the best alignment found so far is used.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::normalize::NormalizedTripleSet;
use super::term::{Term, Triple};

pub const ALIGNMENT_BUDGET: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffScores {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl DiffScores {
    /// Scores from raw counts. Both sets empty counts as a perfect match.
    pub fn from_counts(tp: usize, candidate_len: usize, reference_len: usize) -> Self {
        debug_assert!(tp <= candidate_len && tp <= reference_len);
        let (precision, recall) = match (candidate_len, reference_len) {
            (0, 0) => (1.0, 1.0),
            (0, _) => (0.0, 0.0),
            (_, 0) => (0.0, 0.0),
            (c, r) => (tp as f64 / c as f64, tp as f64 / r as f64),
        };
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        DiffScores {
            tp,
            fp: candidate_len - tp,
            fn_: reference_len - tp,
            precision,
            recall,
            f1,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.fp == 0 && self.fn_ == 0
    }
}

/// Scores `candidate` against `reference`.
pub fn triple_set_scores(candidate: &NormalizedTripleSet, reference: &NormalizedTripleSet) -> DiffScores {
    let tp = matched_triples(candidate, reference);
    DiffScores::from_counts(tp, candidate.len(), reference.len())
}

/// Size of the largest overlap between `candidate` and `reference` under a
/// blank-node alignment (see module docs).
pub fn matched_triples(candidate: &NormalizedTripleSet, reference: &NormalizedTripleSet) -> usize {
    let reference_ground: HashSet<&Triple> = reference.iter().filter(|t| !t.has_blank()).collect();
    let ground = candidate
        .iter()
        .filter(|t| !t.has_blank() && reference_ground.contains(t))
        .count();
    let cand_blank: Vec<&Triple> = candidate.iter().filter(|t| t.has_blank()).collect();
    let ref_blank: Vec<&Triple> = reference.iter().filter(|t| t.has_blank()).collect();
    if cand_blank.is_empty() || ref_blank.is_empty() {
        return ground;
    }
    let ref_set: HashSet<&Triple> = ref_blank.iter().copied().collect();
    if cand_blank.iter().all(|t| ref_set.contains(t)) {
        return ground + cand_blank.len();
    }
    ground + Aligner::new(&cand_blank, &ref_blank).best()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Slot<'a> {
    Fixed(&'a Term),
    Blank(usize),
}

struct Aligner<'a> {
    /// Candidate blank triples as (subject, predicate, object) slots.
    cand: Vec<(Slot<'a>, &'a Term, Slot<'a>)>,
    reference: HashSet<(Slot<'a>, &'a Term, Slot<'a>)>,
    cand_labels: Vec<&'a str>,
    ref_labels: Vec<&'a str>,
    /// Candidate blank indices in assignment order.
    order: Vec<usize>,
    /// For each candidate triple, the position in `order` at which it becomes decided.
    decided_at: Vec<usize>,
    options: Vec<Vec<Option<usize>>>,
    best: usize,
    visited: usize,
}

fn blank_index<'a>(labels: &[&'a str]) -> HashMap<&'a str, usize> {
    labels.iter().enumerate().map(|(i, l)| (*l, i)).collect()
}

fn collect_labels<'a>(triples: &[&'a Triple]) -> Vec<&'a str> {
    let mut set = BTreeSet::new();
    for t in triples {
        for term in [&t.subject, &t.object] {
            if let Term::Blank(b) = term {
                set.insert(b.as_str());
            }
        }
    }
    set.into_iter().collect()
}

fn slot<'a>(term: &'a Term, index: &HashMap<&'a str, usize>) -> Slot<'a> {
    match term {
        Term::Blank(b) => Slot::Blank(index[b.as_str()]),
        other => Slot::Fixed(other),
    }
}

impl<'a> Aligner<'a> {
    fn new(cand: &[&'a Triple], reference: &[&'a Triple]) -> Self {
        let cand_labels = collect_labels(cand);
        let ref_labels = collect_labels(reference);
        let ci = blank_index(&cand_labels);
        let ri = blank_index(&ref_labels);
        let cand_slots: Vec<_> = cand
            .iter()
            .map(|t| (slot(&t.subject, &ci), &t.predicate, slot(&t.object, &ci)))
            .collect();
        let ref_slots: Vec<_> = reference
            .iter()
            .map(|t| (slot(&t.subject, &ri), &t.predicate, slot(&t.object, &ri)))
            .collect();

        // Compatible targets: a reference blank appearing in the same
        // position of a triple with the same predicate and same fixed end.
        let mut incident: Vec<Vec<(&Term, Slot<'a>, bool)>> = vec![Vec::new(); cand_labels.len()];
        for (s, p, o) in &cand_slots {
            if let Slot::Blank(b) = s {
                incident[*b].push((p, *o, true));
            }
            if let Slot::Blank(b) = o {
                incident[*b].push((p, *s, false));
            }
        }
        let mut ref_by_predicate: HashMap<&Term, Vec<(Slot<'a>, Slot<'a>)>> = HashMap::new();
        for (s, p, o) in &ref_slots {
            ref_by_predicate.entry(p).or_default().push((*s, *o));
        }
        let mut options: Vec<Vec<Option<usize>>> = Vec::with_capacity(cand_labels.len());
        let degree: Vec<usize> = incident.iter().map(Vec::len).collect();
        for edges in &incident {
            let mut votes: HashMap<usize, usize> = HashMap::new();
            for (p, other, outgoing) in edges {
                for (rs, ro) in ref_by_predicate.get(p).map_or(&[][..], Vec::as_slice) {
                    let (rmine, rother) = if *outgoing { (rs, ro) } else { (ro, rs) };
                    let other_ok = match (other, rother) {
                        (Slot::Fixed(x), Slot::Fixed(y)) => x == y,
                        (Slot::Blank(_), Slot::Blank(_)) => true,
                        _ => false,
                    };
                    if let (Slot::Blank(r), true) = (rmine, other_ok) {
                        *votes.entry(*r).or_default() += 1;
                    }
                }
            }
            let mut ranked: Vec<(usize, usize)> = votes.into_iter().collect();
            ranked.sort_by(|a, b| b.1.cmp(&a.1).then(ref_labels[a.0].cmp(ref_labels[b.0])));
            let mut opts: Vec<Option<usize>> = ranked.into_iter().map(|(r, _)| Some(r)).collect();
            opts.push(None);
            options.push(opts);
        }

        let mut order: Vec<usize> = (0..cand_labels.len()).collect();
        order.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(cand_labels[a].cmp(cand_labels[b])));
        let mut position = vec![0usize; cand_labels.len()];
        for (pos, &b) in order.iter().enumerate() {
            position[b] = pos;
        }
        let decided_at = cand_slots
            .iter()
            .map(|(s, _, o)| {
                [s, o]
                    .iter()
                    .filter_map(|x| match x {
                        Slot::Blank(b) => Some(position[*b]),
                        Slot::Fixed(_) => None,
                    })
                    .max()
                    .expect("blank triple has a blank")
            })
            .collect();

        Aligner {
            cand: cand_slots,
            reference: ref_slots.into_iter().collect(),
            cand_labels,
            ref_labels,
            order,
            decided_at,
            options,
            best: 0,
            visited: 0,
        }
    }

    fn matches(&self, triple: usize, assignment: &[Option<usize>]) -> bool {
        let map = |s: &Slot<'a>| -> Option<Slot<'a>> {
            match s {
                Slot::Fixed(t) => Some(Slot::Fixed(t)),
                Slot::Blank(b) => assignment[*b].map(Slot::Blank),
            }
        };
        let (s, p, o) = &self.cand[triple];
        match (map(s), map(o)) {
            (Some(s), Some(o)) => self.reference.contains(&(s, *p, o)),
            _ => false,
        }
    }

    fn best(mut self) -> usize {
        // Canonical labels as the starting alignment.
        let ri = blank_index(&self.ref_labels);
        let identity: Vec<Option<usize>> = self.cand_labels.iter().map(|l| ri.get(l).copied()).collect();
        self.best = (0..self.cand.len()).filter(|&t| self.matches(t, &identity)).count();
        if self.best < self.cand.len() {
            let depths = self.order.len();
            let mut by_depth: Vec<Vec<usize>> = vec![Vec::new(); depths];
            for (t, &d) in self.decided_at.iter().enumerate() {
                by_depth[d].push(t);
            }
            let mut remaining = vec![0usize; depths + 1];
            for d in (0..depths).rev() {
                remaining[d] = remaining[d + 1] + by_depth[d].len();
            }
            let mut state = SearchState {
                assignment: vec![None; self.cand_labels.len()],
                used: vec![false; self.ref_labels.len()],
                by_depth,
                remaining,
            };
            self.search(0, 0, &mut state);
        }
        self.best
    }

    fn search(&mut self, depth: usize, matched: usize, state: &mut SearchState) {
        self.visited += 1;
        if self.visited > ALIGNMENT_BUDGET || self.best == self.cand.len() {
            return;
        }
        if matched + state.remaining[depth] <= self.best {
            return;
        }
        if depth == self.order.len() {
            self.best = matched;
            return;
        }
        let b = self.order[depth];
        for k in 0..self.options[b].len() {
            let option = self.options[b][k];
            if let Some(r) = option {
                if state.used[r] {
                    continue;
                }
                state.used[r] = true;
            }
            state.assignment[b] = option;
            let gained = state.by_depth[depth]
                .iter()
                .filter(|&&t| self.matches(t, &state.assignment))
                .count();
            self.search(depth + 1, matched + gained, state);
            state.assignment[b] = None;
            if let Some(r) = option {
                state.used[r] = false;
            }
        }
    }
}

struct SearchState {
    assignment: Vec<Option<usize>>,
    used: Vec<bool>,
    by_depth: Vec<Vec<usize>>,
    remaining: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{normalize, parse_turtle_strict};

    fn norm(doc: &str) -> NormalizedTripleSet {
        normalize(&parse_turtle_strict(doc).unwrap())
    }

    #[test]
    fn identity_is_perfect() {
        let n = norm("<http://a> <http://p> <http://b> . _:x <http://p> \"v\" .");
        let s = triple_set_scores(&n, &n);
        assert_eq!(s.f1, 1.0);
        assert!(s.is_exact());
    }

    #[test]
    fn empty_candidate_scores_zero() {
        let r = norm("<http://a> <http://p> <http://b> .");
        let s = triple_set_scores(&NormalizedTripleSet::default(), &r);
        assert_eq!((s.precision, s.recall, s.f1), (0.0, 0.0, 0.0));
        assert_eq!(s.fn_, 1);
    }

    #[test]
    fn both_empty_is_perfect() {
        let e = NormalizedTripleSet::default();
        assert_eq!(triple_set_scores(&e, &e).f1, 1.0);
    }

    #[test]
    fn two_of_three_against_four() {
        let c = norm("<http://a> <http://p> 1, 2, 9 .");
        let r = norm("<http://a> <http://p> 1, 2, 3, 4 .");
        let s = triple_set_scores(&c, &r);
        assert_eq!((s.tp, s.fp, s.fn_), (2, 1, 2));
        assert!((s.precision - 2.0 / 3.0).abs() < 1e-12);
        assert!((s.recall - 0.5).abs() < 1e-12);
        assert!((s.f1 - 4.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn alignment_recovers_partially_matching_blanks() {
        let r = norm("_:a <http://p> \"1\" . _:a <http://q> \"x\" . _:b <http://p> \"2\" .");
        let c = norm("_:m <http://p> \"1\" . _:n <http://p> \"2\" .");
        assert_eq!(triple_set_scores(&c, &r).tp, 2);
    }
}
