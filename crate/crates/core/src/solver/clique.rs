//! Induced model solver: maximum weight clique on the labeled
//! association product. Product vertices are label-equal vertex pairs
//! (u in g1, v in g2); two product vertices are adjacent when their
//! g1 sides and g2 sides agree on adjacency and, if adjacent, on the
//! edge label. Cliques are exactly the common induced subgraphs, and
//! the clique weight (summed vertex weights) is the induced size.

use num::rational::BigRational;
use num::Zero;

use crate::error::Result;
use crate::graph::{Embedding, EmbeddingKind, LabeledGraph, LabelWeighting};
use crate::solver::{McsResult, McsWitness, WitnessSet};

struct Product {
    pairs: Vec<(usize, usize)>,
    compat: Vec<Vec<bool>>,
    weight: Vec<BigRational>,
}

fn build_product(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    alpha: &LabelWeighting,
) -> Result<Product> {
    let mut pairs = Vec::new();
    let mut weight = Vec::new();
    for u in 0..g1.vertex_count() {
        for v in 0..g2.vertex_count() {
            if g1.vertex_label_at(u) == g2.vertex_label_at(v) {
                weight.push(alpha.weight(g1.vertex_label_at(u))?.clone());
                pairs.push((u, v));
            }
        }
    }
    let m = pairs.len();
    let mut compat = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let (u1, v1) = pairs[i];
            let (u2, v2) = pairs[j];
            if u1 == u2 || v1 == v2 {
                continue;
            }
            let ok = match (g1.edge_label_idx(u1, u2), g2.edge_label_idx(v1, v2)) {
                (None, None) => true,
                (Some(a), Some(b)) => a == b,
                _ => false,
            };
            compat[i][j] = ok;
            compat[j][i] = ok;
        }
    }
    Ok(Product {
        pairs,
        compat,
        weight,
    })
}

pub(super) fn solve_induced(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    alpha: &LabelWeighting,
    canon_cap: usize,
) -> Result<McsResult> {
    for g in [g1, g2] {
        for l in g.vertex_labels() {
            alpha.weight(l)?;
        }
    }
    let product = build_product(g1, g2, alpha)?;
    let mut search = CliqueSearch {
        g1,
        g2,
        product: &product,
        clique: Vec::new(),
        best: BigRational::zero(),
        witnesses: WitnessSet::new(canon_cap),
        nodes: 0,
    };
    let all: Vec<usize> = (0..product.pairs.len()).collect();
    search.expand(&all, BigRational::zero())?;
    Ok(McsResult {
        best_size: search.best,
        witnesses: search.witnesses.into_vec(),
        nodes_explored: search.nodes,
    })
}

struct CliqueSearch<'a> {
    g1: &'a LabeledGraph,
    g2: &'a LabeledGraph,
    product: &'a Product,
    clique: Vec<usize>,
    best: BigRational,
    witnesses: WitnessSet,
    nodes: u64,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, candidates: &[usize], weight: BigRational) -> Result<()> {
        self.nodes += 1;
        // maximum-weight cliques are maximal (weights are positive), but
        // recording every node keeps the empty graph reachable as well
        if weight > self.best {
            self.best = weight.clone();
            self.witnesses.clear();
        }
        if weight == self.best {
            let witness = self.build_witness()?;
            self.witnesses.insert(witness)?;
        }
        let mut remaining = BigRational::zero();
        for &c in candidates {
            remaining += &self.product.weight[c];
        }
        for (k, &c) in candidates.iter().enumerate() {
            if &weight + &remaining < self.best {
                return Ok(());
            }
            remaining -= &self.product.weight[c];
            let narrowed: Vec<usize> = candidates[k + 1..]
                .iter()
                .copied()
                .filter(|&d| self.product.compat[c][d])
                .collect();
            self.clique.push(c);
            self.expand(&narrowed, &weight + &self.product.weight[c])?;
            self.clique.pop();
        }
        Ok(())
    }

    fn build_witness(&self) -> Result<McsWitness> {
        let chosen: Vec<usize> = self.clique.iter().map(|&c| self.product.pairs[c].0).collect();
        let graph = self.g1.induced_subgraph(&chosen);
        let into_first = Embedding {
            kind: EmbeddingKind::Induced,
            vertex_map: graph
                .vertex_ids()
                .map(|id| (id.to_string(), id.to_string()))
                .collect(),
        };
        let into_second = Embedding {
            kind: EmbeddingKind::Induced,
            vertex_map: self
                .clique
                .iter()
                .map(|&c| {
                    let (u, v) = self.product.pairs[c];
                    (
                        self.g1.vertex_id(u).to_string(),
                        self.g2.vertex_id(v).to_string(),
                    )
                })
                .collect(),
        };
        Ok(McsWitness {
            graph,
            into_first,
            into_second,
        })
    }
}
