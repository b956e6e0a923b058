//! Common-subelement similarity models and exact graph distances.
//!
//! A model is a finite partially ordered domain with a size function;
//! any two elements admit maximum common subelements, and four exact
//! metrics fall out of the maximum common size. This crate provides:
//!
//! - explicit finite models with exhaustive axiom and metric-law
//!   checkers ([`model`]);
//! - labeled graphs with three orders (subgraph, induced subgraph,
//!   extended subgraph over label models), their size functions, and
//!   graph canonicalization ([`graph`], [`matching`], [`canon`]);
//! - exact maximum common subgraph solvers per order, each paired with
//!   an enumeration oracle, and distance/matrix entry points
//!   ([`solver`]);
//! - the constructive transformation of a finite metric space into a
//!   model that recovers the metric ([`space`]);
//! - exact graph edit distance and its derived-model correspondence
//!   ([`ged`]).
//!
//! All arithmetic is exact big-rational; nothing is approximated.

// relation tables are scanned by index on purpose: the indices identify
// the witness elements the checkers report
#![allow(clippy::needless_range_loop)]

pub mod canon;
pub mod error;
pub mod ged;
pub mod graph;
pub mod matching;
pub mod model;
pub mod rational;
pub mod solver;
pub mod space;

pub use canon::{canonical_form, canonical_form_with_cap, CanonicalForm};
pub use error::{Error, Result};
pub use graph::{size_ges, size_gv, size_gve, Embedding, EmbeddingKind, LabeledGraph, LabelWeighting};
pub use model::{metric_value, AxiomReport, AxiomTag, FiniteMcsModel, MetricKind, Violation};
pub use solver::{
    distance_matrix, graph_distance, mcs_brute_force, mcs_solve, ExtendedLabels, GraphModel,
    GraphModelKind, McsResult, McsWitness,
};
pub use space::{build_model, enumerate_connected_edge_subsets, verify_recovery, FiniteMetricSpace, SpaceModel};
