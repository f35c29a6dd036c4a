//! RDF data model, Turtle parsing and serialization, normalization and
//! triple-set scoring.

mod canon;
mod extract;
pub mod iri;
mod literal;
mod metrics;
mod normalize;
mod parser;
mod salvage;
mod serialize;
mod term;
pub mod vocab;

pub use canon::{canonical_blank_labels, BRANCH_BUDGET, MAX_ROUNDS};
pub use extract::{extract_turtle_candidate, fenced_blocks};
pub use literal::{canonical_boolean, canonical_decimal, canonical_double, canonical_integer, canonical_literal};
pub use metrics::{matched_triples, triple_set_scores, DiffScores, ALIGNMENT_BUDGET};
pub use normalize::{normalize, NormalizedTripleSet};
pub use parser::{parse_turtle_strict, ParseError};
pub use salvage::{salvage_parse_turtle, salvage_report, split_statements, SalvageReport, SalvageUnit};
pub use serialize::serialize_turtle;
pub use term::{Graph, Literal, Term, Triple};
