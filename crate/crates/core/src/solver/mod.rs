//! Exact maximum-common-subgraph computation for the three graph
//! models, each with a naive enumeration oracle and an optimized
//! solver, plus the end-user distance entry points.

mod bnb;
mod brute;
mod clique;

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::Zero;

use crate::canon::{canonical_form_with_cap, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{size_ges, size_gv, size_gve, Embedding, LabeledGraph, LabelWeighting};
use crate::matching;
use crate::model::{metric_value, FiniteMcsModel, MetricKind};

/// Default vertex cap for the optimized solvers.
pub const DEFAULT_SOLVER_VERTEX_CAP: usize = 12;
/// Vertex cap for the enumeration oracles.
pub const BRUTE_FORCE_VERTEX_CAP: usize = 6;
/// Maximum number of witnesses retained per result; the best size is
/// exact regardless.
pub const WITNESS_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphModelKind {
    Subgraph,
    Induced,
    Extended,
}

impl GraphModelKind {
    pub fn code(self) -> &'static str {
        match self {
            GraphModelKind::Subgraph => "S",
            GraphModelKind::Induced => "I",
            GraphModelKind::Extended => "E",
        }
    }

    pub fn from_code(code: &str) -> Result<Self> {
        match code {
            "S" => Ok(GraphModelKind::Subgraph),
            "I" => Ok(GraphModelKind::Induced),
            "E" => Ok(GraphModelKind::Extended),
            other => Err(Error::InvalidInput(format!(
                "unknown graph model kind `{other}` (expected S, I, or E)"
            ))),
        }
    }
}

/// Label models for the extended relation; all label sizes must be
/// strictly positive.
#[derive(Clone, Debug)]
pub struct ExtendedLabels {
    pub vertex_model: FiniteMcsModel,
    pub edge_model: FiniteMcsModel,
}

impl ExtendedLabels {
    pub fn new(vertex_model: FiniteMcsModel, edge_model: FiniteMcsModel) -> Result<Self> {
        for model in [&vertex_model, &edge_model] {
            for id in model.ids() {
                if model.size_of(id)?.is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "label `{id}` has size zero; extended label models need strictly positive sizes"
                    )));
                }
            }
        }
        Ok(ExtendedLabels {
            vertex_model,
            edge_model,
        })
    }
}

/// A graph model bundles the relation with its size function parameters.
#[derive(Clone, Debug)]
pub enum GraphModel {
    Subgraph(LabelWeighting),
    Induced(LabelWeighting),
    Extended(ExtendedLabels),
}

impl GraphModel {
    pub fn kind(&self) -> GraphModelKind {
        match self {
            GraphModel::Subgraph(_) => GraphModelKind::Subgraph,
            GraphModel::Induced(_) => GraphModelKind::Induced,
            GraphModel::Extended(_) => GraphModelKind::Extended,
        }
    }

    /// The model's size function applied to one graph.
    pub fn size(&self, g: &LabeledGraph) -> Result<BigRational> {
        match self {
            GraphModel::Subgraph(alpha) => size_gve(g, alpha),
            GraphModel::Induced(alpha) => size_gv(g, alpha),
            GraphModel::Extended(labels) => {
                size_ges(g, &labels.vertex_model, &labels.edge_model)
            }
        }
    }

    /// The model's relation: does `pattern` precede `host`?
    pub fn related(&self, pattern: &LabeledGraph, host: &LabeledGraph) -> Result<bool> {
        Ok(match self {
            GraphModel::Subgraph(_) => matching::subgraph_isomorphic(pattern, host).is_some(),
            GraphModel::Induced(_) => {
                matching::induced_subgraph_isomorphic(pattern, host).is_some()
            }
            GraphModel::Extended(labels) => matching::extended_subgraph_isomorphic(
                pattern,
                host,
                &labels.vertex_model,
                &labels.edge_model,
            )?
            .is_some(),
        })
    }
}

/// One maximum common subelement: the common graph itself plus a
/// validating embedding into each input graph.
#[derive(Clone, Debug)]
pub struct McsWitness {
    pub graph: LabeledGraph,
    pub into_first: Embedding,
    pub into_second: Embedding,
}

impl McsWitness {
    /// Replay both embeddings and confirm the witness size.
    pub fn validate(
        &self,
        model: &GraphModel,
        g1: &LabeledGraph,
        g2: &LabeledGraph,
        best_size: &BigRational,
    ) -> Result<bool> {
        let models = match model {
            GraphModel::Extended(labels) => Some((&labels.vertex_model, &labels.edge_model)),
            _ => None,
        };
        Ok(self.into_first.validate(&self.graph, g1, models)?
            && self.into_second.validate(&self.graph, g2, models)?
            && model.size(&self.graph)? == *best_size)
    }
}

/// Result of a maximum common subelement computation.
#[derive(Clone, Debug)]
pub struct McsResult {
    pub best_size: BigRational,
    pub witnesses: Vec<McsWitness>,
    pub nodes_explored: u64,
}

/// Collects witnesses deduplicated by canonical form, keeping at most
/// `WITNESS_CAP` smallest forms, ordered deterministically.
pub(crate) struct WitnessSet {
    canon_cap: usize,
    map: BTreeMap<CanonicalForm, McsWitness>,
}

impl WitnessSet {
    pub(crate) fn new(canon_cap: usize) -> Self {
        WitnessSet {
            canon_cap,
            map: BTreeMap::new(),
        }
    }

    pub(crate) fn clear(&mut self) {
        self.map.clear();
    }

    pub(crate) fn insert(&mut self, witness: McsWitness) -> Result<()> {
        let form = canonical_form_with_cap(&witness.graph, self.canon_cap)?;
        self.map.entry(form).or_insert(witness);
        while self.map.len() > WITNESS_CAP {
            self.map.pop_last();
        }
        Ok(())
    }

    pub(crate) fn into_vec(self) -> Vec<McsWitness> {
        self.map.into_values().collect()
    }
}

fn check_vertex_caps(g1: &LabeledGraph, g2: &LabeledGraph, cap: usize) -> Result<()> {
    for (name, g) in [("first graph vertices", g1), ("second graph vertices", g2)] {
        if g.vertex_count() > cap {
            return Err(Error::cap(name, cap, g.vertex_count()));
        }
    }
    Ok(())
}

/// Enumeration oracle: every subgraph of the first graph is generated
/// and tested for embeddability into the second under the model's
/// relation; the maximizers of the model's size function are returned.
pub fn mcs_brute_force(
    model: &GraphModel,
    g1: &LabeledGraph,
    g2: &LabeledGraph,
) -> Result<McsResult> {
    check_vertex_caps(g1, g2, BRUTE_FORCE_VERTEX_CAP)?;
    brute::run(model, g1, g2)
}

/// Optimized exact solver. Same best size as the oracle; witnesses may
/// differ but always validate. Induced models reduce to maximum weight
/// clique on the labeled association product; subgraph and extended
/// models use branch and bound over partial vertex maps.
pub fn mcs_solve(
    model: &GraphModel,
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    vertex_cap: usize,
) -> Result<McsResult> {
    check_vertex_caps(g1, g2, vertex_cap)?;
    match model {
        GraphModel::Subgraph(alpha) => bnb::solve_weighted(g1, g2, alpha, vertex_cap),
        GraphModel::Induced(alpha) => clique::solve_induced(g1, g2, alpha, vertex_cap),
        GraphModel::Extended(labels) => bnb::solve_extended(g1, g2, labels, vertex_cap),
    }
}

/// metric(size(g1), size(g2), best common size) under the chosen model.
pub fn graph_distance(
    model: &GraphModel,
    metric: MetricKind,
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    vertex_cap: usize,
) -> Result<BigRational> {
    let s1 = model.size(g1)?;
    let s2 = model.size(g2)?;
    let s12 = mcs_solve(model, g1, g2, vertex_cap)?.best_size;
    metric_value(metric, &s1, &s2, &s12)
}

/// Symmetric pairwise distance matrix with zero diagonal.
pub fn distance_matrix(
    model: &GraphModel,
    metric: MetricKind,
    graphs: &[LabeledGraph],
    vertex_cap: usize,
) -> Result<Vec<Vec<BigRational>>> {
    let n = graphs.len();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = graph_distance(model, metric, &graphs[i], &graphs[j], vertex_cap)
                .map_err(|e| e.with_context(&format!("pair ({i},{j})")))?;
            m[i][j] = d.clone();
            m[j][i] = d;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests;
