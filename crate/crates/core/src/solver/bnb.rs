//! Branch and bound over partial injective vertex maps, used for the
//! subgraph and extended models. Vertices of the first graph are
//! decided in identifier order (map to a host vertex, or skip); the
//! admissible bound is the total weight of everything not yet decided.
//! Pruning is strict, so all maximizers reachable within the witness
//! cap are retained.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::Zero;

use crate::error::Result;
use crate::graph::{Embedding, EmbeddingKind, LabeledGraph, LabelWeighting};
use crate::solver::{ExtendedLabels, McsResult, McsWitness, WitnessSet};

/// Per-pair vertex and edge scores, plus the label to give a matched
/// item in the witness graph.
struct PairScores {
    vertex: BTreeMap<(String, String), (BigRational, String)>,
    edge: BTreeMap<(String, String), (BigRational, String)>,
}

impl PairScores {
    fn vertex_gain(&self, a: &str, b: &str) -> Option<&(BigRational, String)> {
        self.vertex.get(&(a.to_string(), b.to_string()))
    }

    fn edge_gain(&self, a: &str, b: &str) -> Option<&(BigRational, String)> {
        self.edge.get(&(a.to_string(), b.to_string()))
    }
}

/// Exact-label scores: a pair is compatible iff the labels are equal,
/// and a match contributes the label's weight.
fn weighted_scores(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    alpha: &LabelWeighting,
) -> Result<PairScores> {
    let mut vertex = BTreeMap::new();
    for a in g1.vertex_labels() {
        for b in g2.vertex_labels() {
            if a == b {
                vertex.insert(
                    (a.to_string(), b.to_string()),
                    (alpha.weight(a)?.clone(), a.to_string()),
                );
            }
        }
    }
    let mut edge = BTreeMap::new();
    for (_, _, a) in g1.edges() {
        for (_, _, b) in g2.edges() {
            if a == b {
                edge.insert(
                    (a.to_string(), b.to_string()),
                    (alpha.weight(a)?.clone(), a.to_string()),
                );
            }
        }
    }
    Ok(PairScores { vertex, edge })
}

/// Label-order scores: every pair is compatible (label models guarantee
/// a common subelement), contributing the maximum common size; the
/// witness label is the first maximum common subelement.
fn extended_scores(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    labels: &ExtendedLabels,
) -> Result<PairScores> {
    let mut vertex = BTreeMap::new();
    for a in g1.vertex_labels() {
        for b in g2.vertex_labels() {
            let key = (a.to_string(), b.to_string());
            if vertex.contains_key(&key) {
                continue;
            }
            let s = labels.vertex_model.max_common_size(a, b)?;
            let pick = labels
                .vertex_model
                .max_common_subelements(a, b)?
                .into_iter()
                .next()
                .expect("nonempty");
            vertex.insert(key, (s, pick));
        }
    }
    let mut edge = BTreeMap::new();
    for (_, _, a) in g1.edges() {
        for (_, _, b) in g2.edges() {
            let key = (a.to_string(), b.to_string());
            if edge.contains_key(&key) {
                continue;
            }
            let s = labels.edge_model.max_common_size(a, b)?;
            let pick = labels
                .edge_model
                .max_common_subelements(a, b)?
                .into_iter()
                .next()
                .expect("nonempty");
            edge.insert(key, (s, pick));
        }
    }
    Ok(PairScores { vertex, edge })
}

pub(super) fn solve_weighted(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    alpha: &LabelWeighting,
    canon_cap: usize,
) -> Result<McsResult> {
    // size function must cover both graphs even if nothing matches
    for g in [g1, g2] {
        for l in g.vertex_labels().chain(g.edge_labels()) {
            alpha.weight(l)?;
        }
    }
    let scores = weighted_scores(g1, g2, alpha)?;
    run(g1, g2, scores, EmbeddingKind::Subgraph, canon_cap)
}

pub(super) fn solve_extended(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    labels: &ExtendedLabels,
    canon_cap: usize,
) -> Result<McsResult> {
    for g in [g1, g2] {
        for l in g.vertex_labels() {
            labels.vertex_model.index_of(l)?;
        }
        for l in g.edge_labels() {
            labels.edge_model.index_of(l)?;
        }
    }
    let scores = extended_scores(g1, g2, labels)?;
    run(g1, g2, scores, EmbeddingKind::Extended, canon_cap)
}

struct Bnb<'a> {
    g1: &'a LabeledGraph,
    g2: &'a LabeledGraph,
    scores: PairScores,
    kind: EmbeddingKind,
    /// upper bound on the gain from vertices/edges not decided before
    /// position p (edge decided when its later endpoint is decided)
    bound_from: Vec<BigRational>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    best: BigRational,
    witnesses: WitnessSet,
    nodes: u64,
}

fn run(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    scores: PairScores,
    kind: EmbeddingKind,
    canon_cap: usize,
) -> Result<McsResult> {
    let n1 = g1.vertex_count();

    // best-case gain of each g1 vertex over all g2 vertices
    let vertex_bound: Vec<BigRational> = (0..n1)
        .map(|u| {
            let ul = g1.vertex_label_at(u);
            g2.vertex_labels()
                .filter_map(|hl| scores.vertex_gain(ul, hl).map(|(s, _)| s.clone()))
                .max()
                .unwrap_or_else(BigRational::zero)
        })
        .collect();
    // best-case gain of each g1 edge, attributed to its later endpoint
    let mut edge_bound_at = vec![BigRational::zero(); n1 + 1];
    for (u, v, el) in g1.edges() {
        let gain = g2
            .edge_labels()
            .filter_map(|hl| scores.edge_gain(el, hl).map(|(s, _)| s.clone()))
            .max()
            .unwrap_or_else(BigRational::zero);
        edge_bound_at[u.max(v)] += gain;
    }
    let mut bound_from = vec![BigRational::zero(); n1 + 1];
    for p in (0..n1).rev() {
        bound_from[p] = &bound_from[p + 1] + &vertex_bound[p] + &edge_bound_at[p];
    }

    let mut state = Bnb {
        g1,
        g2,
        scores,
        kind,
        bound_from,
        map: Vec::with_capacity(n1),
        used: vec![false; g2.vertex_count()],
        best: BigRational::zero(),
        witnesses: WitnessSet::new(canon_cap),
        nodes: 0,
    };
    state.search(BigRational::zero())?;
    Ok(McsResult {
        best_size: state.best,
        witnesses: state.witnesses.into_vec(),
        nodes_explored: state.nodes,
    })
}

impl Bnb<'_> {
    fn search(&mut self, score: BigRational) -> Result<()> {
        self.nodes += 1;
        let p = self.map.len();
        if p == self.g1.vertex_count() {
            if score > self.best {
                self.best = score.clone();
                self.witnesses.clear();
            }
            if score == self.best {
                let witness = self.build_witness()?;
                self.witnesses.insert(witness)?;
            }
            return Ok(());
        }
        if &score + &self.bound_from[p] < self.best {
            return Ok(());
        }
        let pl = self.g1.vertex_label_at(p).to_string();
        for h in 0..self.g2.vertex_count() {
            if self.used[h] {
                continue;
            }
            let Some((vgain, _)) = self.scores.vertex_gain(&pl, self.g2.vertex_label_at(h))
            else {
                continue;
            };
            // incompatible edge pairs never make a map infeasible for
            // these relations; they simply contribute nothing
            let mut gain = vgain.clone();
            for (q, assigned) in self.map.iter().enumerate() {
                let Some(hq) = assigned else { continue };
                if let Some(el) = self.g1.edge_label_idx(p, q) {
                    if let Some(hl) = self.g2.edge_label_idx(h, *hq) {
                        if let Some((egain, _)) = self.scores.edge_gain(el, hl) {
                            gain += egain;
                        }
                    }
                }
            }
            self.map.push(Some(h));
            self.used[h] = true;
            self.search(&score + &gain)?;
            self.used[h] = false;
            self.map.pop();
        }
        self.map.push(None);
        self.search(score)?;
        self.map.pop();
        Ok(())
    }

    /// The common graph for a complete assignment: matched vertices and
    /// every edge pair that contributes, labeled per the score table.
    fn build_witness(&self) -> Result<McsWitness> {
        let mut vertices = Vec::new();
        let mut into_second = BTreeMap::new();
        for (p, assigned) in self.map.iter().enumerate() {
            let Some(h) = assigned else { continue };
            let (_, label) = self
                .scores
                .vertex_gain(self.g1.vertex_label_at(p), self.g2.vertex_label_at(*h))
                .expect("assigned pairs are compatible");
            vertices.push((self.g1.vertex_id(p).to_string(), label.clone()));
            into_second.insert(
                self.g1.vertex_id(p).to_string(),
                self.g2.vertex_id(*h).to_string(),
            );
        }
        let mut edges = Vec::new();
        for (u, v, el) in self.g1.edges() {
            let (Some(hu), Some(hv)) = (
                self.map.get(u).copied().flatten(),
                self.map.get(v).copied().flatten(),
            ) else {
                continue;
            };
            let Some(hl) = self.g2.edge_label_idx(hu, hv) else {
                continue;
            };
            let Some((_, label)) = self.scores.edge_gain(el, hl) else {
                continue;
            };
            edges.push((
                self.g1.vertex_id(u).to_string(),
                self.g1.vertex_id(v).to_string(),
                label.clone(),
            ));
        }
        let graph = LabeledGraph::new(vertices, edges)?;
        let into_first = Embedding {
            kind: self.kind,
            vertex_map: graph
                .vertex_ids()
                .map(|id| (id.to_string(), id.to_string()))
                .collect(),
        };
        Ok(McsWitness {
            graph,
            into_first,
            into_second: Embedding {
                kind: self.kind,
                vertex_map: into_second,
            },
        })
    }
}
