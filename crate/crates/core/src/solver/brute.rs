//! Enumeration oracles. Deliberately direct: generate candidate
//! subgraphs of the first graph, test each against the second with the
//! standalone matchers, and keep the maximizers. The optimized solvers
//! are cross-checked against these on every scale they share.

use num::rational::BigRational;
use num::Zero;

use crate::error::Result;
use crate::graph::{Embedding, EmbeddingKind, LabeledGraph};
use crate::matching;
use crate::model::FiniteMcsModel;

use super::{
    ExtendedLabels, GraphModel, McsResult, McsWitness, WitnessSet, BRUTE_FORCE_VERTEX_CAP,
};

pub(super) fn run(
    model: &GraphModel,
    g1: &LabeledGraph,
    g2: &LabeledGraph,
) -> Result<McsResult> {
    match model {
        GraphModel::Subgraph(_) => run_plain(model, g1, g2, false),
        GraphModel::Induced(_) => run_plain(model, g1, g2, true),
        GraphModel::Extended(labels) => run_extended(model, labels, g1, g2),
    }
}

fn vertex_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..(1u32 << n)).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

fn identity_embedding(kind: EmbeddingKind, h: &LabeledGraph) -> Embedding {
    Embedding {
        kind,
        vertex_map: h.vertex_ids().map(|v| (v.to_string(), v.to_string())).collect(),
    }
}

/// Subgraph and induced models: candidates are subgraphs of g1 (all
/// edge subsets for the plain relation, induced edges for the induced
/// relation); each is tested into g2 with exact labels.
fn run_plain(
    model: &GraphModel,
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    induced: bool,
) -> Result<McsResult> {
    let kind = if induced {
        EmbeddingKind::Induced
    } else {
        EmbeddingKind::Subgraph
    };
    let mut best = BigRational::zero();
    let mut witnesses = WitnessSet::new(BRUTE_FORCE_VERTEX_CAP);
    let mut nodes = 0u64;

    for vs in vertex_subsets(g1.vertex_count()) {
        let inner = g1.edges_within(&vs);
        let edge_choices: Vec<Vec<usize>> = if induced {
            vec![inner]
        } else {
            vertex_subsets(inner.len())
                .map(|picks| picks.into_iter().map(|k| inner[k]).collect())
                .collect()
        };
        for es in edge_choices {
            nodes += 1;
            let h = g1.subgraph(&vs, &es);
            let into_second = if induced {
                matching::induced_subgraph_isomorphic(&h, g2)
            } else {
                matching::subgraph_isomorphic(&h, g2)
            };
            let Some(into_second) = into_second else {
                continue;
            };
            let score = model.size(&h)?;
            if score > best {
                best = score.clone();
                witnesses.clear();
            }
            if score == best {
                let into_first = identity_embedding(kind, &h);
                witnesses.insert(McsWitness {
                    graph: h,
                    into_first,
                    into_second,
                })?;
            }
        }
    }

    Ok(McsResult {
        best_size: best,
        witnesses: witnesses.into_vec(),
        nodes_explored: nodes,
    })
}

fn first_mcs_label(model: &FiniteMcsModel, a: &str, b: &str) -> Result<String> {
    Ok(model
        .max_common_subelements(a, b)?
        .into_iter()
        .next()
        .expect("max common subelements are nonempty"))
}

/// Extended model: enumerate common unlabeled structures (subgraph
/// structures of g1 and every structure-only embedding into g2), score
/// each matched vertex/edge by the maximum common size of its label
/// pair, and relabel the winner with members of the label-model mcs.
fn run_extended(
    model: &GraphModel,
    labels: &ExtendedLabels,
    g1: &LabeledGraph,
    g2: &LabeledGraph,
) -> Result<McsResult> {
    for g in [g1, g2] {
        for l in g.vertex_labels() {
            labels.vertex_model.index_of(l)?;
        }
        for l in g.edge_labels() {
            labels.edge_model.index_of(l)?;
        }
    }

    let mut best = BigRational::zero();
    let mut witnesses = WitnessSet::new(BRUTE_FORCE_VERTEX_CAP);
    let mut nodes = 0u64;

    for vs in vertex_subsets(g1.vertex_count()) {
        let inner = g1.edges_within(&vs);
        for picks in vertex_subsets(inner.len()) {
            let es: Vec<usize> = picks.into_iter().map(|k| inner[k]).collect();
            let structure = g1.subgraph(&vs, &es);
            for embedding in matching::structural_embeddings(&structure, g2) {
                nodes += 1;
                let mut score = BigRational::zero();
                for (p, &h) in embedding.iter().enumerate() {
                    score += labels.vertex_model.max_common_size(
                        structure.vertex_label_at(p),
                        g2.vertex_label_at(h),
                    )?;
                }
                for (u, v, el) in structure.edges() {
                    let host_label = g2
                        .edge_label_idx(embedding[u], embedding[v])
                        .expect("structural embedding preserves edges");
                    score += labels.edge_model.max_common_size(el, host_label)?;
                }
                if score < best {
                    continue;
                }
                if score > best {
                    best = score.clone();
                    witnesses.clear();
                }
                // relabel with a maximum common label per matched item
                let vertices = embedding
                    .iter()
                    .enumerate()
                    .map(|(p, &h)| {
                        Ok((
                            structure.vertex_id(p).to_string(),
                            first_mcs_label(
                                &labels.vertex_model,
                                structure.vertex_label_at(p),
                                g2.vertex_label_at(h),
                            )?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let edges = structure
                    .edges()
                    .map(|(u, v, el)| {
                        let host_label = g2.edge_label_idx(embedding[u], embedding[v]).unwrap();
                        Ok((
                            structure.vertex_id(u).to_string(),
                            structure.vertex_id(v).to_string(),
                            first_mcs_label(&labels.edge_model, el, host_label)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let common = LabeledGraph::new(vertices, edges)?;
                let into_first = identity_embedding(EmbeddingKind::Extended, &common);
                let into_second = Embedding {
                    kind: EmbeddingKind::Extended,
                    vertex_map: embedding
                        .iter()
                        .enumerate()
                        .map(|(p, &h)| {
                            (structure.vertex_id(p).to_string(), g2.vertex_id(h).to_string())
                        })
                        .collect(),
                };
                debug_assert_eq!(model.size(&common)?, score);
                witnesses.insert(McsWitness {
                    graph: common,
                    into_first,
                    into_second,
                })?;
            }
        }
    }

    Ok(McsResult {
        best_size: best,
        witnesses: witnesses.into_vec(),
        nodes_explored: nodes,
    })
}
