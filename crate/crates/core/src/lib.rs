//! Benchmark harness for knowledge-graph-engineering tasks.
//!
//! Tasks generate size-parameterized prompts, model connectors answer them,
//! and RDF-aware scorers grade the answers. The harness runs the
//! model × task × size × repetition grid, appends every exchange to a JSON
//! Lines results file and aggregates statistics into plot-ready CSV.

pub mod rdf;
pub mod connectors;
pub mod harness;
pub mod tasks;
