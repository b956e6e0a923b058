//! Labeled undirected simple graphs, their sizes under the three
//! weighting schemes, and the padding ("completion") construction.

use std::collections::{BTreeMap, BTreeSet};

use num::rational::BigRational;
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::FiniteMcsModel;
use crate::rational::{format_ratio, parse_ratio, ratio_int};

/// Reserved labels used for padding vertices and edges. The JSON parser
/// rejects them in user input, so they are always fresh.
pub const RESERVED_VERTEX_LABEL: &str = "\u{0}V";
pub const RESERVED_EDGE_LABEL: &str = "\u{0}E";

#[derive(Clone, Debug, PartialEq, Eq)]
struct VertexData {
    id: String,
    label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct EdgeData {
    u: usize,
    v: usize,
    label: String,
}

/// A finite undirected simple graph with one label per vertex and per
/// edge. Vertices are kept sorted by identifier; edges are kept as
/// index pairs (u < v) sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Vec<VertexData>,
    edges: Vec<EdgeData>,
    adj: Vec<Vec<Option<usize>>>,
}

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    id: String,
    label: String,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    u: String,
    v: String,
    label: String,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
}

impl LabeledGraph {
    pub fn empty() -> Self {
        LabeledGraph {
            vertices: Vec::new(),
            edges: Vec::new(),
            adj: Vec::new(),
        }
    }

    /// Build a graph from (id, label) vertices and (u, v, label) edges.
    /// Rejects self-loops, duplicate edges (in either orientation),
    /// duplicate or empty vertex ids, and unknown endpoints.
    pub fn new(
        vertices: Vec<(String, String)>,
        edges: Vec<(String, String, String)>,
    ) -> Result<Self> {
        let mut vs: Vec<VertexData> = vertices
            .into_iter()
            .map(|(id, label)| VertexData { id, label })
            .collect();
        vs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut index = BTreeMap::new();
        for (i, v) in vs.iter().enumerate() {
            if v.id.is_empty() {
                return Err(Error::InvalidInput("empty vertex id".into()));
            }
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!(
                    "duplicate vertex id `{}`",
                    v.id
                )));
            }
        }
        let mut es = Vec::with_capacity(edges.len());
        let mut seen = BTreeSet::new();
        for (u, v, label) in edges {
            let ui = *index
                .get(&u)
                .ok_or_else(|| Error::InvalidInput(format!("edge endpoint `{u}` is not a vertex")))?;
            let vi = *index
                .get(&v)
                .ok_or_else(|| Error::InvalidInput(format!("edge endpoint `{v}` is not a vertex")))?;
            if ui == vi {
                return Err(Error::InvalidInput(format!("self-loop at `{u}`")));
            }
            let (a, b) = if ui < vi { (ui, vi) } else { (vi, ui) };
            if !seen.insert((a, b)) {
                return Err(Error::InvalidInput(format!("duplicate edge {{{u},{v}}}")));
            }
            es.push(EdgeData { u: a, v: b, label });
        }
        es.sort_by_key(|e| (e.u, e.v));
        let mut adj = vec![vec![None; vs.len()]; vs.len()];
        for (k, e) in es.iter().enumerate() {
            adj[e.u][e.v] = Some(k);
            adj[e.v][e.u] = Some(k);
        }
        Ok(LabeledGraph {
            vertices: vs,
            edges: es,
            adj,
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("graph JSON: {e}")))?;
        for v in &doc.vertices {
            if v.label == RESERVED_VERTEX_LABEL || v.label == RESERVED_EDGE_LABEL {
                return Err(Error::InvalidInput(format!(
                    "vertex `{}` uses a reserved label",
                    v.id
                )));
            }
        }
        for e in &doc.edges {
            if e.label == RESERVED_VERTEX_LABEL || e.label == RESERVED_EDGE_LABEL {
                return Err(Error::InvalidInput(format!(
                    "edge {{{},{}}} uses a reserved label",
                    e.u, e.v
                )));
            }
        }
        LabeledGraph::new(
            doc.vertices.into_iter().map(|v| (v.id, v.label)).collect(),
            doc.edges.into_iter().map(|e| (e.u, e.v, e.label)).collect(),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().map(|v| serde_json::json!({
                "id": v.id, "label": v.label,
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "u": self.vertices[e.u].id,
                "v": self.vertices[e.v].id,
                "label": e.label,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_id(&self, idx: usize) -> &str {
        &self.vertices[idx].id
    }

    pub fn vertex_label_at(&self, idx: usize) -> &str {
        &self.vertices[idx].label
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.id.as_str().cmp(id))
            .ok()
    }

    pub fn vertex_label(&self, id: &str) -> Option<&str> {
        self.vertex_index(id).map(|i| self.vertex_label_at(i))
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(|v| v.id.as_str())
    }

    pub fn vertex_labels(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(|v| v.label.as_str())
    }

    /// Edges as (u index, v index, label), u < v, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &str)> {
        self.edges.iter().map(|e| (e.u, e.v, e.label.as_str()))
    }

    pub fn edge_labels(&self) -> impl Iterator<Item = &str> {
        self.edges.iter().map(|e| e.label.as_str())
    }

    pub fn edge_label_idx(&self, u: usize, v: usize) -> Option<&str> {
        self.adj[u][v].map(|k| self.edges[k].label.as_str())
    }

    pub fn has_edge_idx(&self, u: usize, v: usize) -> bool {
        self.adj[u][v].is_some()
    }

    pub fn edge_label(&self, u: &str, v: &str) -> Option<&str> {
        let ui = self.vertex_index(u)?;
        let vi = self.vertex_index(v)?;
        self.edge_label_idx(ui, vi)
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.adj[idx].iter().filter(|e| e.is_some()).count()
    }

    /// The subgraph on the given vertex indices with the given edge
    /// indices. Edge endpoints must lie within the chosen vertices.
    pub fn subgraph(&self, vertex_idxs: &[usize], edge_idxs: &[usize]) -> LabeledGraph {
        let vertices = vertex_idxs
            .iter()
            .map(|&i| (self.vertices[i].id.clone(), self.vertices[i].label.clone()))
            .collect();
        let edges = edge_idxs
            .iter()
            .map(|&k| {
                let e = &self.edges[k];
                (
                    self.vertices[e.u].id.clone(),
                    self.vertices[e.v].id.clone(),
                    e.label.clone(),
                )
            })
            .collect();
        LabeledGraph::new(vertices, edges).expect("subgraph of a valid graph is valid")
    }

    /// The induced subgraph on the given vertex indices.
    pub fn induced_subgraph(&self, vertex_idxs: &[usize]) -> LabeledGraph {
        let chosen: BTreeSet<usize> = vertex_idxs.iter().copied().collect();
        let edge_idxs: Vec<usize> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| chosen.contains(&e.u) && chosen.contains(&e.v))
            .map(|(k, _)| k)
            .collect();
        self.subgraph(vertex_idxs, &edge_idxs)
    }

    /// Indices of the edges whose endpoints both lie in `vertex_idxs`.
    pub fn edges_within(&self, vertex_idxs: &[usize]) -> Vec<usize> {
        let chosen: BTreeSet<usize> = vertex_idxs.iter().copied().collect();
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| chosen.contains(&e.u) && chosen.contains(&e.v))
            .map(|(k, _)| k)
            .collect()
    }

    /// Pad to `n` vertices and all possible edges: new vertices carry
    /// `eps_v`, new edges carry `eps_e`, existing labels are preserved.
    pub fn completion(&self, n: usize, eps_v: &str, eps_e: &str) -> Result<LabeledGraph> {
        if n < self.vertices.len() {
            return Err(Error::InvalidInput(format!(
                "completion target {n} is below the vertex count {}",
                self.vertices.len()
            )));
        }
        let complete =
            self.edges.len() == self.vertices.len() * self.vertices.len().saturating_sub(1) / 2;
        if n == self.vertices.len() && complete {
            return Ok(self.clone());
        }
        let ordinary = self
            .vertices
            .iter()
            .any(|v| v.label == eps_v || v.label == eps_e)
            || self.edges.iter().any(|e| e.label == eps_v || e.label == eps_e);
        if ordinary {
            return Err(Error::InvalidInput(
                "padding labels already occur as ordinary labels".into(),
            ));
        }
        let mut vertices: Vec<(String, String)> = self
            .vertices
            .iter()
            .map(|v| (v.id.clone(), v.label.clone()))
            .collect();
        let existing: BTreeSet<&String> = self.vertices.iter().map(|v| &v.id).collect();
        let mut counter = 0usize;
        while vertices.len() < n {
            let id = format!("p{counter}");
            counter += 1;
            if existing.contains(&id) {
                continue;
            }
            vertices.push((id, eps_v.to_string()));
        }
        let mut edges: Vec<(String, String, String)> = self
            .edges
            .iter()
            .map(|e| {
                (
                    self.vertices[e.u].id.clone(),
                    self.vertices[e.v].id.clone(),
                    e.label.clone(),
                )
            })
            .collect();
        let had: BTreeSet<(String, String)> = edges
            .iter()
            .map(|(u, v, _)| (u.min(v).clone(), u.max(v).clone()))
            .collect();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                let (a, b) = (&vertices[i].0, &vertices[j].0);
                let key = (a.min(b).clone(), a.max(b).clone());
                if !had.contains(&key) {
                    edges.push((a.clone(), b.clone(), eps_e.to_string()));
                }
            }
        }
        LabeledGraph::new(vertices, edges)
    }
}

/// Strictly positive weights per label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelWeighting {
    weights: BTreeMap<String, BigRational>,
}

impl LabelWeighting {
    pub fn new(weights: BTreeMap<String, BigRational>) -> Result<Self> {
        for (label, w) in &weights {
            if *w <= BigRational::zero() {
                return Err(Error::InvalidInput(format!(
                    "weight for `{label}` must be strictly positive, got {}",
                    format_ratio(w)
                )));
            }
        }
        Ok(LabelWeighting { weights })
    }

    pub fn from_json_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (label, text) in map {
            weights.insert(label.clone(), parse_ratio(text)?);
        }
        LabelWeighting::new(weights)
    }

    /// Weight 1 for every label observed in the given graphs.
    pub fn uniform_over(graphs: &[&LabeledGraph]) -> Self {
        let mut weights = BTreeMap::new();
        for g in graphs {
            for l in g.vertex_labels().chain(g.edge_labels()) {
                weights.insert(l.to_string(), ratio_int(1));
            }
        }
        LabelWeighting { weights }
    }

    pub fn weight(&self, label: &str) -> Result<&BigRational> {
        self.weights
            .get(label)
            .ok_or_else(|| Error::MissingWeight(label.to_string()))
    }
}

/// Sum of vertex and edge weights; 0 for the empty graph.
pub fn size_gve(g: &LabeledGraph, alpha: &LabelWeighting) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for l in g.vertex_labels() {
        total += alpha.weight(l)?;
    }
    for l in g.edge_labels() {
        total += alpha.weight(l)?;
    }
    Ok(total)
}

/// Sum of vertex weights only; 0 for the empty graph.
pub fn size_gv(g: &LabeledGraph, alpha: &LabelWeighting) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for l in g.vertex_labels() {
        total += alpha.weight(l)?;
    }
    Ok(total)
}

/// Sum of the label sizes under the nested vertex/edge label models;
/// 0 for the empty graph. Every used label size must be positive.
pub fn size_ges(
    g: &LabeledGraph,
    vertex_model: &FiniteMcsModel,
    edge_model: &FiniteMcsModel,
) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for l in g.vertex_labels() {
        let s = vertex_model.size_of(l).map_err(|_| Error::UnknownLabel(l.to_string()))?;
        if s.is_zero() {
            return Err(Error::InvalidInput(format!(
                "vertex label `{l}` has size zero in its label model"
            )));
        }
        total += s;
    }
    for l in g.edge_labels() {
        let s = edge_model.size_of(l).map_err(|_| Error::UnknownLabel(l.to_string()))?;
        if s.is_zero() {
            return Err(Error::InvalidInput(format!(
                "edge label `{l}` has size zero in its label model"
            )));
        }
        total += s;
    }
    Ok(total)
}

/// Which structural relation an embedding claims to respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddingKind {
    Subgraph,
    Induced,
    Extended,
}

impl EmbeddingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EmbeddingKind::Subgraph => "subgraph",
            EmbeddingKind::Induced => "induced",
            EmbeddingKind::Extended => "extended",
        }
    }
}

/// An injective vertex map from a pattern into a host, tagged with the
/// relation it witnesses. Replayable via [`Embedding::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub kind: EmbeddingKind,
    pub vertex_map: BTreeMap<String, String>,
}

impl Embedding {
    pub(crate) fn from_indices(
        kind: EmbeddingKind,
        pattern: &LabeledGraph,
        host: &LabeledGraph,
        map: &[usize],
    ) -> Self {
        let vertex_map = map
            .iter()
            .enumerate()
            .map(|(p, &h)| (pattern.vertex_id(p).to_string(), host.vertex_id(h).to_string()))
            .collect();
        Embedding { kind, vertex_map }
    }

    /// Check the structure and label conditions of `kind` hold for this
    /// map. Extended embeddings need the label models.
    pub fn validate(
        &self,
        pattern: &LabeledGraph,
        host: &LabeledGraph,
        label_models: Option<(&FiniteMcsModel, &FiniteMcsModel)>,
    ) -> Result<bool> {
        if self.vertex_map.len() != pattern.vertex_count() {
            return Ok(false);
        }
        let mut image = BTreeSet::new();
        let mut map_idx = vec![usize::MAX; pattern.vertex_count()];
        for (p, h) in &self.vertex_map {
            let (Some(pi), Some(hi)) = (pattern.vertex_index(p), host.vertex_index(h)) else {
                return Ok(false);
            };
            if !image.insert(hi) {
                return Ok(false); // not injective
            }
            map_idx[pi] = hi;
        }
        for pi in 0..pattern.vertex_count() {
            let pl = pattern.vertex_label_at(pi);
            let hl = host.vertex_label_at(map_idx[pi]);
            let ok = match self.kind {
                EmbeddingKind::Subgraph | EmbeddingKind::Induced => pl == hl,
                EmbeddingKind::Extended => {
                    let (vm, _) = label_models.ok_or_else(|| {
                        Error::InvalidInput("extended embedding needs label models".into())
                    })?;
                    vm.leq(pl, hl)?
                }
            };
            if !ok {
                return Ok(false);
            }
        }
        for pi in 0..pattern.vertex_count() {
            for pj in pi + 1..pattern.vertex_count() {
                let pe = pattern.edge_label_idx(pi, pj);
                let he = host.edge_label_idx(map_idx[pi], map_idx[pj]);
                let ok = match (pe, he, self.kind) {
                    (None, None, _) => true,
                    (None, Some(_), EmbeddingKind::Induced) => false,
                    (None, Some(_), _) => true,
                    (Some(_), None, _) => false,
                    (Some(a), Some(b), EmbeddingKind::Extended) => {
                        let (_, em) = label_models.ok_or_else(|| {
                            Error::InvalidInput("extended embedding needs label models".into())
                        })?;
                        em.leq(a, b)?
                    }
                    (Some(a), Some(b), _) => a == b,
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind.as_str(),
            "vertexMap": self.vertex_map,
        })
    }
}
