//! Shared helpers for the integration suites: small-graph universes,
//! seeded random generators, and the fixed chain label models used by
//! the extended-order checks.

// each integration target compiles this module separately and uses a
// different subset of it
#![allow(dead_code)]

use mcs_core::canon::canonical_form;
use mcs_core::graph::LabeledGraph;
use mcs_core::model::FiniteMcsModel;
use mcs_core::rational::ratio_int;
use mcs_core::solver::ExtendedLabels;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub fn g(vs: &[(&str, &str)], es: &[(&str, &str, &str)]) -> LabeledGraph {
    LabeledGraph::new(
        vs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        es.iter()
            .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
            .collect(),
    )
    .unwrap()
}

/// Every graph with at most `max_n` vertices over the given vertex
/// labels and the single edge label, one representative per
/// isomorphism class, in canonical-form order.
pub fn graph_universe(max_n: usize, vertex_labels: &[&str], edge_label: &str) -> Vec<LabeledGraph> {
    let mut seen: BTreeMap<_, LabeledGraph> = BTreeMap::new();
    for n in 0..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let label_assignments = vertex_labels.len().pow(n as u32);
        for la in 0..label_assignments {
            let mut labels = Vec::with_capacity(n);
            let mut rem = la;
            for _ in 0..n {
                labels.push(vertex_labels[rem % vertex_labels.len()]);
                rem /= vertex_labels.len();
            }
            for mask in 0..(1u32 << pairs.len()) {
                let vs: Vec<(String, String)> = (0..n)
                    .map(|i| (format!("v{i}"), labels[i].to_string()))
                    .collect();
                let es: Vec<(String, String, String)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &(i, j))| {
                        (format!("v{i}"), format!("v{j}"), edge_label.to_string())
                    })
                    .collect();
                let graph = LabeledGraph::new(vs, es).unwrap();
                let form = canonical_form(&graph).unwrap();
                seen.entry(form).or_insert(graph);
            }
        }
    }
    seen.into_values().collect()
}

/// Deterministic random graph with up to `max_n` vertices.
pub fn random_graph(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    vertex_labels: &[&str],
    edge_label: &str,
) -> LabeledGraph {
    let n = rng.gen_range(0..=max_n);
    let vs: Vec<(String, String)> = (0..n)
        .map(|i| {
            let l = vertex_labels[rng.gen_range(0..vertex_labels.len())];
            (format!("v{i}"), l.to_string())
        })
        .collect();
    let mut es = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                es.push((format!("v{i}"), format!("v{j}"), edge_label.to_string()));
            }
        }
    }
    LabeledGraph::new(vs, es).unwrap()
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The fixed three-element chain label model c0 < c1 < c2 with sizes
/// 1, 2, 3, used (twice) as the extended-order label models. Graphs in
/// the extended universes use vertex labels c1/c2 and edge label c1.
pub fn chain_label_models() -> ExtendedLabels {
    let chain = FiniteMcsModel::new(
        vec![
            ("c0".into(), ratio_int(1)),
            ("c1".into(), ratio_int(2)),
            ("c2".into(), ratio_int(3)),
        ],
        &[
            ("c0".into(), "c1".into()),
            ("c0".into(), "c2".into()),
            ("c1".into(), "c2".into()),
        ],
    )
    .unwrap();
    ExtendedLabels::new(chain.clone(), chain).unwrap()
}

pub const CHAIN_VERTEX_LABELS: [&str; 2] = ["c1", "c2"];
pub const CHAIN_EDGE_LABEL: &str = "c1";
