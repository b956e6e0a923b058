//! Backtracking embedding search for the three structural relations on
//! labeled graphs: plain subgraph, induced subgraph, and extended
//! subgraph (labels compared through a pair of label-order models).
//!
//! Pattern vertices are assigned in identifier order and host candidates
//! tried in identifier order, so the first embedding found maps out the
//! lexicographically least witness.

use crate::error::Result;
use crate::graph::{Embedding, EmbeddingKind, LabeledGraph};
use crate::model::FiniteMcsModel;

#[derive(Clone, Copy)]
enum StructureRule {
    /// pattern edges map to host edges; host-only edges are allowed
    Plain,
    /// pattern non-edges must map to host non-edges as well
    Induced,
}

enum LabelRule<'a> {
    Exact,
    /// structure-only matching; labels ignored entirely
    Any,
    Order {
        vertex_model: &'a FiniteMcsModel,
        edge_model: &'a FiniteMcsModel,
    },
}

impl LabelRule<'_> {
    fn vertex_ok(&self, pattern_label: &str, host_label: &str) -> bool {
        match self {
            LabelRule::Exact => pattern_label == host_label,
            LabelRule::Any => true,
            LabelRule::Order { vertex_model, .. } => vertex_model
                .leq(pattern_label, host_label)
                .expect("labels validated before the search"),
        }
    }

    fn edge_ok(&self, pattern_label: &str, host_label: &str) -> bool {
        match self {
            LabelRule::Exact => pattern_label == host_label,
            LabelRule::Any => true,
            LabelRule::Order { edge_model, .. } => edge_model
                .leq(pattern_label, host_label)
                .expect("labels validated before the search"),
        }
    }
}

struct Matcher<'a> {
    pattern: &'a LabeledGraph,
    host: &'a LabeledGraph,
    structure: StructureRule,
    labels: LabelRule<'a>,
    collect_all: bool,
    map: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Vec<usize>>,
}

impl Matcher<'_> {
    fn run(mut self) -> Vec<Vec<usize>> {
        if self.pattern.vertex_count() <= self.host.vertex_count() {
            self.extend();
        }
        self.found
    }

    fn extend(&mut self) {
        let p = self.map.len();
        if p == self.pattern.vertex_count() {
            self.found.push(self.map.clone());
            return;
        }
        for h in 0..self.host.vertex_count() {
            if self.used[h] || !self.compatible(p, h) {
                continue;
            }
            self.map.push(h);
            self.used[h] = true;
            self.extend();
            self.used[h] = false;
            self.map.pop();
            if !self.collect_all && !self.found.is_empty() {
                return;
            }
        }
    }

    fn compatible(&self, p: usize, h: usize) -> bool {
        if !self
            .labels
            .vertex_ok(self.pattern.vertex_label_at(p), self.host.vertex_label_at(h))
        {
            return false;
        }
        for (q, &hq) in self.map.iter().enumerate() {
            let pe = self.pattern.edge_label_idx(p, q);
            let he = self.host.edge_label_idx(h, hq);
            let ok = match (pe, he) {
                (None, None) => true,
                (None, Some(_)) => matches!(self.structure, StructureRule::Plain),
                (Some(_), None) => false,
                (Some(a), Some(b)) => self.labels.edge_ok(a, b),
            };
            if !ok {
                return false;
            }
        }
        true
    }
}

fn first_embedding(
    pattern: &LabeledGraph,
    host: &LabeledGraph,
    structure: StructureRule,
    labels: LabelRule<'_>,
) -> Option<Vec<usize>> {
    Matcher {
        pattern,
        host,
        structure,
        labels,
        collect_all: false,
        map: Vec::new(),
        used: vec![false; host.vertex_count()],
        found: Vec::new(),
    }
    .run()
    .into_iter()
    .next()
}

/// Label- and structure-preserving bijection test; the witness is the
/// lexicographically least vertex map when one exists.
pub fn is_isomorphic(g1: &LabeledGraph, g2: &LabeledGraph) -> Option<Embedding> {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    first_embedding(g1, g2, StructureRule::Induced, LabelRule::Exact)
        .map(|m| Embedding::from_indices(EmbeddingKind::Induced, g1, g2, &m))
}

/// Does the pattern embed into the host with exact labels, pattern
/// edges preserved, host-only edges permitted?
pub fn subgraph_isomorphic(pattern: &LabeledGraph, host: &LabeledGraph) -> Option<Embedding> {
    first_embedding(pattern, host, StructureRule::Plain, LabelRule::Exact)
        .map(|m| Embedding::from_indices(EmbeddingKind::Subgraph, pattern, host, &m))
}

/// Does the pattern embed into the host with exact labels and non-edges
/// preserved as non-edges?
pub fn induced_subgraph_isomorphic(
    pattern: &LabeledGraph,
    host: &LabeledGraph,
) -> Option<Embedding> {
    first_embedding(pattern, host, StructureRule::Induced, LabelRule::Exact)
        .map(|m| Embedding::from_indices(EmbeddingKind::Induced, pattern, host, &m))
}

/// Does the pattern embed into the host (plain structure) with every
/// pattern label below the corresponding host label in the respective
/// label model? Every label of both graphs must be a model element.
pub fn extended_subgraph_isomorphic(
    pattern: &LabeledGraph,
    host: &LabeledGraph,
    vertex_model: &FiniteMcsModel,
    edge_model: &FiniteMcsModel,
) -> Result<Option<Embedding>> {
    for g in [pattern, host] {
        for l in g.vertex_labels() {
            vertex_model.index_of(l)?;
        }
        for l in g.edge_labels() {
            edge_model.index_of(l)?;
        }
    }
    Ok(first_embedding(
        pattern,
        host,
        StructureRule::Plain,
        LabelRule::Order {
            vertex_model,
            edge_model,
        },
    )
    .map(|m| Embedding::from_indices(EmbeddingKind::Extended, pattern, host, &m)))
}

/// Every structure-preserving injective map of the pattern into the
/// host, ignoring all labels. Used by the extended-model oracle, which
/// scores each embedding by label-model common sizes.
pub(crate) fn structural_embeddings(
    pattern: &LabeledGraph,
    host: &LabeledGraph,
) -> Vec<Vec<usize>> {
    Matcher {
        pattern,
        host,
        structure: StructureRule::Plain,
        labels: LabelRule::Any,
        collect_all: true,
        map: Vec::new(),
        used: vec![false; host.vertex_count()],
        found: Vec::new(),
    }
    .run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio_int;
    use itertools::Itertools;

    fn g(vs: &[(&str, &str)], es: &[(&str, &str, &str)]) -> LabeledGraph {
        LabeledGraph::new(
            vs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            es.iter()
                .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
                .collect(),
        )
        .unwrap()
    }

    fn k3() -> LabeledGraph {
        g(
            &[("1", "a"), ("2", "a"), ("3", "a")],
            &[("1", "2", "x"), ("1", "3", "x"), ("2", "3", "x")],
        )
    }

    fn p3() -> LabeledGraph {
        g(
            &[("1", "a"), ("2", "a"), ("3", "a")],
            &[("1", "2", "x"), ("2", "3", "x")],
        )
    }

    /// Independent oracle: enumerate every bijection directly.
    fn isomorphic_by_enumeration(g1: &LabeledGraph, g2: &LabeledGraph) -> bool {
        if g1.vertex_count() != g2.vertex_count() {
            return false;
        }
        let n = g1.vertex_count();
        (0..n).permutations(n).any(|perm| {
            (0..n).all(|i| g1.vertex_label_at(i) == g2.vertex_label_at(perm[i]))
                && (0..n).all(|i| {
                    (i + 1..n).all(|j| g1.edge_label_idx(i, j) == g2.edge_label_idx(perm[i], perm[j]))
                })
        })
    }

    #[test]
    fn isomorphism_cases() {
        let self_iso = is_isomorphic(&k3(), &k3()).unwrap();
        // identity map is the lexicographically least witness
        for (a, b) in &self_iso.vertex_map {
            assert_eq!(a, b);
        }
        assert!(is_isomorphic(&k3(), &p3()).is_none());

        let abc = g(
            &[("1", "a"), ("2", "b"), ("3", "c")],
            &[("1", "2", "x"), ("2", "3", "x")],
        );
        let cba = g(
            &[("1", "c"), ("2", "b"), ("3", "a")],
            &[("1", "2", "x"), ("2", "3", "x")],
        );
        assert!(isomorphic_by_enumeration(&abc, &cba));
        let w = is_isomorphic(&abc, &cba).unwrap();
        assert!(w.validate(&abc, &cba, None).unwrap());
    }

    #[test]
    fn matcher_agrees_with_bijection_oracle() {
        let samples = [
            k3(),
            p3(),
            g(&[("1", "a"), ("2", "b")], &[("1", "2", "x")]),
            g(&[("1", "b"), ("2", "a")], &[("1", "2", "x")]),
            g(&[("1", "a")], &[]),
            LabeledGraph::empty(),
        ];
        for g1 in &samples {
            for g2 in &samples {
                assert_eq!(
                    is_isomorphic(g1, g2).is_some(),
                    isomorphic_by_enumeration(g1, g2),
                );
            }
        }
    }

    #[test]
    fn subgraph_cases() {
        assert!(subgraph_isomorphic(&LabeledGraph::empty(), &k3()).is_some());
        assert!(subgraph_isomorphic(&LabeledGraph::empty(), &LabeledGraph::empty()).is_some());
        let w = subgraph_isomorphic(&p3(), &k3()).unwrap();
        assert!(w.validate(&p3(), &k3(), None).unwrap());
        let ex = g(&[("1", "a"), ("2", "a")], &[("1", "2", "x")]);
        let ey = g(&[("1", "a"), ("2", "a")], &[("1", "2", "y")]);
        assert!(subgraph_isomorphic(&ex, &ey).is_none());
    }

    #[test]
    fn induced_cases() {
        // every 3-vertex induced subgraph of K3 is K3 itself
        assert!(induced_subgraph_isomorphic(&p3(), &k3()).is_none());
        let k2 = g(&[("1", "a"), ("2", "a")], &[("1", "2", "x")]);
        assert!(induced_subgraph_isomorphic(&k2, &k3()).is_some());
        assert!(induced_subgraph_isomorphic(&k3(), &k3()).is_some());
    }

    #[test]
    fn extended_with_discrete_models_is_plain_subgraph() {
        let vm = FiniteMcsModel::new(
            vec![("a".into(), ratio_int(1)), ("b".into(), ratio_int(2))],
            &[],
        )
        .unwrap();
        let em = FiniteMcsModel::new(
            vec![("x".into(), ratio_int(1)), ("y".into(), ratio_int(2))],
            &[],
        )
        .unwrap();
        let pats = [
            g(&[("1", "a"), ("2", "b")], &[("1", "2", "x")]),
            g(&[("1", "a")], &[]),
            p3(),
        ];
        let hosts = [
            g(
                &[("1", "a"), ("2", "b"), ("3", "a")],
                &[("1", "2", "x"), ("2", "3", "y")],
            ),
            k3(),
        ];
        for p in &pats {
            for h in &hosts {
                assert_eq!(
                    extended_subgraph_isomorphic(p, h, &vm, &em).unwrap().is_some(),
                    subgraph_isomorphic(p, h).is_some(),
                );
            }
        }
    }

    #[test]
    fn extended_respects_label_order() {
        // x0 below every other vertex label
        let vm = FiniteMcsModel::new(
            vec![("a".into(), ratio_int(2)), ("x0".into(), ratio_int(1))],
            &[("x0".into(), "a".into())],
        )
        .unwrap();
        let em = FiniteMcsModel::new(
            vec![("lo".into(), ratio_int(1)), ("hi".into(), ratio_int(2))],
            &[("lo".into(), "hi".into())],
        )
        .unwrap();
        let bottom = g(&[("v", "x0")], &[]);
        let host = g(&[("1", "a"), ("2", "a")], &[("1", "2", "hi")]);
        let w = extended_subgraph_isomorphic(&bottom, &host, &vm, &em)
            .unwrap()
            .unwrap();
        assert!(w.validate(&bottom, &host, Some((&vm, &em))).unwrap());

        // pattern edge label strictly above host edge label fails both ways
        let phi = g(&[("1", "a"), ("2", "a")], &[("1", "2", "hi")]);
        let plo = g(&[("1", "a"), ("2", "a")], &[("1", "2", "lo")]);
        assert!(extended_subgraph_isomorphic(&phi, &plo, &vm, &em)
            .unwrap()
            .is_none());
        assert!(extended_subgraph_isomorphic(&plo, &phi, &vm, &em)
            .unwrap()
            .is_some());

        let unknown = g(&[("v", "zz")], &[]);
        assert!(extended_subgraph_isomorphic(&unknown, &host, &vm, &em).is_err());
    }

    #[test]
    fn structural_embeddings_count() {
        // single vertex into P3 ignoring labels: three placements
        let v = g(&[("1", "q")], &[]);
        assert_eq!(structural_embeddings(&v, &p3()).len(), 3);
        // one edge into K3 ignoring labels: six ordered placements
        let e = g(&[("1", "q"), ("2", "q")], &[("1", "2", "q")]);
        assert_eq!(structural_embeddings(&e, &k3()).len(), 6);
    }
}
