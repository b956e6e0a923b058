//! Exact graph edit distance under label-pair cost tables, and the
//! correspondence that re-expresses a metric edit distance as a
//! symmetric-difference distance in a derived model: the label spaces
//! (with their padding labels) become label models via the metric-space
//! construction, graphs embed as completions into complete graphs over
//! those label models, and the minimum edit cost equals
//! s(x1) + s(x2) - 2 s'({x1, x2}).

use std::collections::BTreeMap;

use itertools::Itertools;
use num::rational::BigRational;
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form_with_cap, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{size_ges, LabeledGraph};
use crate::model::AxiomReport;
use crate::rational::{format_ratio, parse_ratio, ratio_int};
use crate::space::{build_model, FiniteMetricSpace, SpaceModel};

/// Cap on |V1| + |V2| for the factorial bijection scan.
pub const GED_VERTEX_CAP: usize = 7;
/// Caps keeping the derived label models tractable.
pub const VERTEX_LABEL_CAP: usize = 4;
pub const EDGE_LABEL_CAP: usize = 3;
pub const CORRESPONDENCE_N_CAP: usize = 3;

#[derive(Serialize, Deserialize)]
struct CostsDoc {
    #[serde(rename = "epsV")]
    eps_v: String,
    #[serde(rename = "epsE")]
    eps_e: String,
    #[serde(rename = "vertexCost")]
    vertex_cost: BTreeMap<String, String>,
    #[serde(rename = "edgeCost")]
    edge_cost: BTreeMap<String, String>,
}

/// Symmetric cost tables over the vertex and edge label sets, each
/// augmented with its padding label. Totality over the declared labels
/// is enforced at parse time; the metric laws are checked separately by
/// [`EditCostTables::validate`].
#[derive(Clone, Debug)]
pub struct EditCostTables {
    pub eps_v: String,
    pub eps_e: String,
    vertex_labels: Vec<String>,
    vertex_table: Vec<Vec<BigRational>>,
    edge_labels: Vec<String>,
    edge_table: Vec<Vec<BigRational>>,
}

fn build_table(
    what: &str,
    eps: &str,
    entries: &BTreeMap<String, String>,
) -> Result<(Vec<String>, Vec<Vec<BigRational>>)> {
    let mut labels: Vec<String> = vec![eps.to_string()];
    for key in entries.keys() {
        let (a, b) = key.split_once('|').ok_or_else(|| {
            Error::InvalidInput(format!("{what} key `{key}` is not of the form `a|b`"))
        })?;
        for l in [a, b] {
            if l.is_empty() {
                return Err(Error::InvalidInput(format!("{what} key `{key}` has an empty label")));
            }
            if !labels.iter().any(|x| x == l) {
                labels.push(l.to_string());
            }
        }
    }
    labels.sort();
    let n = labels.len();
    let idx = |l: &str| labels.iter().position(|x| x == l).unwrap();
    let mut table: Vec<Vec<Option<BigRational>>> = vec![vec![None; n]; n];
    for (i, row) in table.iter_mut().enumerate() {
        row[i] = Some(BigRational::zero());
    }
    for (key, value) in entries {
        let (a, b) = key.split_once('|').unwrap();
        let (i, j) = (idx(a), idx(b));
        let v = parse_ratio(value)?;
        for (x, y) in [(i, j), (j, i)] {
            match &table[x][y] {
                Some(existing) if *existing != v => {
                    return Err(Error::InvalidInput(format!(
                        "{what} entry `{key}` conflicts with an earlier value"
                    )));
                }
                _ => table[x][y] = Some(v.clone()),
            }
        }
    }
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = table[i][j].clone().ok_or_else(|| {
                Error::InvalidInput(format!(
                    "{what} is missing the pair `{}|{}`",
                    labels[i], labels[j]
                ))
            })?;
        }
    }
    Ok((labels, out))
}

impl EditCostTables {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: CostsDoc = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("cost tables JSON: {e}")))?;
        if doc.eps_v.is_empty() || doc.eps_e.is_empty() {
            return Err(Error::InvalidInput("padding labels must be nonempty".into()));
        }
        let (vertex_labels, vertex_table) =
            build_table("vertex cost table", &doc.eps_v, &doc.vertex_cost)?;
        let (edge_labels, edge_table) =
            build_table("edge cost table", &doc.eps_e, &doc.edge_cost)?;
        Ok(EditCostTables {
            eps_v: doc.eps_v,
            eps_e: doc.eps_e,
            vertex_labels,
            vertex_table,
            edge_labels,
            edge_table,
        })
    }

    /// Discrete-metric tables (0 on the diagonal, 1 elsewhere) over the
    /// given ordinary label sets.
    pub fn discrete(
        vertex_labels: &[&str],
        edge_labels: &[&str],
        eps_v: &str,
        eps_e: &str,
    ) -> Self {
        let build = |labels: &[&str], eps: &str| {
            let mut all: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
            all.push(eps.to_string());
            all.sort();
            all.dedup();
            let n = all.len();
            let table = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { ratio_int(0) } else { ratio_int(1) })
                        .collect()
                })
                .collect();
            (all, table)
        };
        let (vertex_labels, vertex_table) = build(vertex_labels, eps_v);
        let (edge_labels, edge_table) = build(edge_labels, eps_e);
        EditCostTables {
            eps_v: eps_v.to_string(),
            eps_e: eps_e.to_string(),
            vertex_labels,
            vertex_table,
            edge_labels,
            edge_table,
        }
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn edge_labels(&self) -> &[String] {
        &self.edge_labels
    }

    pub fn vertex_cost(&self, a: &str, b: &str) -> Result<&BigRational> {
        let i = self.vertex_index(a)?;
        let j = self.vertex_index(b)?;
        Ok(&self.vertex_table[i][j])
    }

    pub fn edge_cost(&self, a: &str, b: &str) -> Result<&BigRational> {
        let i = self.edge_index(a)?;
        let j = self.edge_index(b)?;
        Ok(&self.edge_table[i][j])
    }

    fn vertex_index(&self, l: &str) -> Result<usize> {
        self.vertex_labels
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| Error::UnknownLabel(l.to_string()))
    }

    fn edge_index(&self, l: &str) -> Result<usize> {
        self.edge_labels
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| Error::UnknownLabel(l.to_string()))
    }

    /// Exact M1-M4 verification of both tables as metrics over their
    /// augmented label sets.
    pub fn validate(&self) -> AxiomReport {
        let v = FiniteMetricSpace::validate_table(&self.vertex_labels, &self.vertex_table);
        let e = FiniteMetricSpace::validate_table(&self.edge_labels, &self.edge_table);
        v.merge(e)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dump = |labels: &[String], table: &[Vec<BigRational>]| {
            let mut map = BTreeMap::new();
            for i in 0..labels.len() {
                for j in i + 1..labels.len() {
                    map.insert(
                        format!("{}|{}", labels[i], labels[j]),
                        format_ratio(&table[i][j]),
                    );
                }
            }
            map
        };
        serde_json::json!({
            "epsV": self.eps_v,
            "epsE": self.eps_e,
            "vertexCost": dump(&self.vertex_labels, &self.vertex_table),
            "edgeCost": dump(&self.edge_labels, &self.edge_table),
        })
    }

    fn check_graph_labels(&self, g: &LabeledGraph) -> Result<()> {
        for l in g.vertex_labels() {
            if l == self.eps_v || l == self.eps_e {
                return Err(Error::InvalidInput(format!(
                    "graph uses the reserved padding label `{l}`"
                )));
            }
            self.vertex_index(l)?;
        }
        for l in g.edge_labels() {
            if l == self.eps_v || l == self.eps_e {
                return Err(Error::InvalidInput(format!(
                    "graph uses the reserved padding label `{l}`"
                )));
            }
            self.edge_index(l)?;
        }
        Ok(())
    }
}

/// Outcome of the exact edit-distance scan.
#[derive(Clone, Debug)]
pub struct GedResult {
    pub distance: BigRational,
    /// vertex map between the two completed graphs, as id pairs
    pub best_bijection: Vec<(String, String)>,
    pub bijections_scanned: u64,
}

/// Edit cost of one bijection between the vertex sets of two completed
/// graphs (both complete, same vertex count).
pub fn bijection_cost(
    c1: &LabeledGraph,
    c2: &LabeledGraph,
    costs: &EditCostTables,
    bijection: &[(String, String)],
) -> Result<BigRational> {
    if bijection.len() != c1.vertex_count() || c1.vertex_count() != c2.vertex_count() {
        return Err(Error::InvalidInput(
            "bijection does not cover both vertex sets".into(),
        ));
    }
    let mut map = vec![usize::MAX; c1.vertex_count()];
    for (a, b) in bijection {
        let i = c1
            .vertex_index(a)
            .ok_or_else(|| Error::InvalidInput(format!("unknown vertex `{a}`")))?;
        let j = c2
            .vertex_index(b)
            .ok_or_else(|| Error::InvalidInput(format!("unknown vertex `{b}`")))?;
        map[i] = j;
    }
    let mut total = BigRational::zero();
    for i in 0..c1.vertex_count() {
        total += costs.vertex_cost(c1.vertex_label_at(i), c2.vertex_label_at(map[i]))?;
    }
    for (u, v, l) in c1.edges() {
        let hl = c2
            .edge_label_idx(map[u], map[v])
            .ok_or_else(|| Error::InvalidInput("completed graph is not complete".into()))?;
        total += costs.edge_cost(l, hl)?;
    }
    Ok(total)
}

/// Complete both graphs to |V1| + |V2| vertices and scan every
/// bijection, returning the minimal cost and the first minimizer in
/// lexicographic bijection order.
pub fn ged_brute_force(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    costs: &EditCostTables,
) -> Result<GedResult> {
    let total = g1.vertex_count() + g2.vertex_count();
    if total > GED_VERTEX_CAP {
        return Err(Error::cap("combined vertex count", GED_VERTEX_CAP, total));
    }
    costs.check_graph_labels(g1)?;
    costs.check_graph_labels(g2)?;
    let c1 = g1.completion(total, &costs.eps_v, &costs.eps_e)?;
    let c2 = g2.completion(total, &costs.eps_v, &costs.eps_e)?;
    let (distance, perm, scanned) = scan_bijections(&c1, &c2, costs)?;
    let best_bijection = perm
        .iter()
        .enumerate()
        .map(|(i, &j)| (c1.vertex_id(i).to_string(), c2.vertex_id(j).to_string()))
        .collect();
    Ok(GedResult {
        distance,
        best_bijection,
        bijections_scanned: scanned,
    })
}

fn scan_bijections(
    c1: &LabeledGraph,
    c2: &LabeledGraph,
    costs: &EditCostTables,
) -> Result<(BigRational, Vec<usize>, u64)> {
    let n = c1.vertex_count();
    let mut best: Option<(BigRational, Vec<usize>)> = None;
    let mut scanned = 0u64;
    for perm in (0..n).permutations(n) {
        scanned += 1;
        let mut cost = BigRational::zero();
        for i in 0..n {
            cost += costs.vertex_cost(c1.vertex_label_at(i), c2.vertex_label_at(perm[i]))?;
        }
        for (u, v, l) in c1.edges() {
            let hl = c2
                .edge_label_idx(perm[u], perm[v])
                .expect("completed graphs are complete");
            cost += costs.edge_cost(l, hl)?;
        }
        match &best {
            Some((b, _)) if *b <= cost => {}
            _ => best = Some((cost, perm)),
        }
    }
    let (distance, perm) = best.unwrap_or((BigRational::zero(), Vec::new()));
    Ok((distance, perm, scanned))
}

/// The derived-model context: label models built from the cost tables,
/// the embedding via completion to 2n vertices, and memoized label-pair
/// maximum common sizes.
pub struct GedCorrespondence {
    pub n: usize,
    costs: EditCostTables,
    pub vertex_space: SpaceModel,
    pub edge_space: SpaceModel,
    vertex_mcs: BTreeMap<(String, String), BigRational>,
    edge_mcs: BTreeMap<(String, String), BigRational>,
}

/// Per-pair verification outcome: both routes to the distance, the
/// equality verdict, and the per-bijection identity statistics.
#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub edit_distance: BigRational,
    pub model_distance: BigRational,
    pub equal: bool,
    pub bijections_checked: u64,
    /// cost(f) = s(x1) + s(x2) - 2 s(x_f) held for every bijection
    pub per_bijection_identity: bool,
    /// the minimum over 2n-padded bijections matched the edit distance
    pub completion_stable: bool,
}

impl GedCorrespondence {
    /// Build label models for graphs of up to `n` vertices. The cost
    /// tables must be metrics; label counts and `n` are capped to keep
    /// the derived models and the (2n)! scans tractable.
    pub fn build(n: usize, costs: EditCostTables, theta: &BigRational) -> Result<Self> {
        if n == 0 || n > CORRESPONDENCE_N_CAP {
            return Err(Error::cap("graph vertex bound", CORRESPONDENCE_N_CAP, n));
        }
        if costs.vertex_labels.len() > VERTEX_LABEL_CAP {
            return Err(Error::cap(
                "vertex labels (padding included)",
                VERTEX_LABEL_CAP,
                costs.vertex_labels.len(),
            ));
        }
        if costs.edge_labels.len() > EDGE_LABEL_CAP {
            return Err(Error::cap(
                "edge labels (padding included)",
                EDGE_LABEL_CAP,
                costs.edge_labels.len(),
            ));
        }
        let report = costs.validate();
        if let Some(v) = report.violations().first() {
            return Err(Error::InvalidInput(format!(
                "cost tables are not metrics: {} at ({})",
                v.axiom,
                v.witness.join(", ")
            )));
        }
        let vspace =
            FiniteMetricSpace::new(costs.vertex_labels.clone(), costs.vertex_table.clone())?;
        let espace = FiniteMetricSpace::new(costs.edge_labels.clone(), costs.edge_table.clone())?;
        let vertex_space = build_model(&vspace, theta)?;
        let edge_space = build_model(&espace, theta)?;

        let memoize = |labels: &[String], sm: &SpaceModel| -> Result<BTreeMap<(String, String), BigRational>> {
            let mut map = BTreeMap::new();
            for a in labels {
                for b in labels {
                    map.insert((a.clone(), b.clone()), sm.model.max_common_size(a, b)?);
                }
            }
            Ok(map)
        };
        let vertex_mcs = memoize(&costs.vertex_labels, &vertex_space)?;
        let edge_mcs = memoize(&costs.edge_labels, &edge_space)?;
        Ok(GedCorrespondence {
            n,
            costs,
            vertex_space,
            edge_space,
            vertex_mcs,
            edge_mcs,
        })
    }

    pub fn costs(&self) -> &EditCostTables {
        &self.costs
    }

    /// The injection into the derived domain: completion to 2n vertices.
    pub fn embed(&self, g: &LabeledGraph) -> Result<LabeledGraph> {
        if g.vertex_count() > self.n {
            return Err(Error::cap("graph vertices", self.n, g.vertex_count()));
        }
        self.costs.check_graph_labels(g)?;
        g.completion(2 * self.n, &self.costs.eps_v, &self.costs.eps_e)
    }

    /// Size of an embedded graph in the derived model.
    pub fn embedded_size(&self, x: &LabeledGraph) -> Result<BigRational> {
        size_ges(x, &self.vertex_space.model, &self.edge_space.model)
    }

    /// Label-pair maximum common size via the memo table, falling back
    /// to the model for labels outside it (derived edge-set elements).
    fn label_mcs(
        table: &BTreeMap<(String, String), BigRational>,
        sm: &SpaceModel,
        a: &str,
        b: &str,
    ) -> Result<BigRational> {
        if let Some(v) = table.get(&(a.to_string(), b.to_string())) {
            return Ok(v.clone());
        }
        sm.model.max_common_size(a, b)
    }

    /// Maximum, over bijections between the vertex sets of two complete
    /// 2n-vertex graphs, of the summed label-pair common sizes. Equals
    /// the model-level maximum common subelement size.
    pub fn mcs_size_on_complete(
        &self,
        x1: &LabeledGraph,
        x2: &LabeledGraph,
    ) -> Result<BigRational> {
        let n = x1.vertex_count();
        if n != x2.vertex_count() || n != 2 * self.n {
            return Err(Error::InvalidInput(
                "both graphs must be complete on 2n vertices".into(),
            ));
        }
        let mut best: Option<BigRational> = None;
        for perm in (0..n).permutations(n) {
            let score = self.bijection_common_size(x1, x2, &perm)?;
            match &best {
                Some(b) if *b >= score => {}
                _ => best = Some(score),
            }
        }
        best.ok_or_else(|| Error::InvalidInput("empty domain graphs".into()))
    }

    fn bijection_common_size(
        &self,
        x1: &LabeledGraph,
        x2: &LabeledGraph,
        perm: &[usize],
    ) -> Result<BigRational> {
        let mut score = BigRational::zero();
        for i in 0..x1.vertex_count() {
            score += Self::label_mcs(
                &self.vertex_mcs,
                &self.vertex_space,
                x1.vertex_label_at(i),
                x2.vertex_label_at(perm[i]),
            )?;
        }
        for (u, v, l) in x1.edges() {
            let hl = x2
                .edge_label_idx(perm[u], perm[v])
                .ok_or_else(|| Error::InvalidInput("domain graph is not complete".into()))?;
            score += Self::label_mcs(&self.edge_mcs, &self.edge_space, l, hl)?;
        }
        Ok(score)
    }

    /// Compute the edit distance and the model-side distance
    /// independently and compare, also checking the per-bijection cost
    /// identity and the stability of the padded minimum.
    pub fn verify(&self, g1: &LabeledGraph, g2: &LabeledGraph) -> Result<CorrespondenceReport> {
        let ged = ged_brute_force(g1, g2, &self.costs)?;
        let x1 = self.embed(g1)?;
        let x2 = self.embed(g2)?;
        let s1 = self.embedded_size(&x1)?;
        let s2 = self.embedded_size(&x2)?;
        let two = ratio_int(2);

        let n = x1.vertex_count();
        let mut best_common: Option<BigRational> = None;
        let mut min_padded_cost: Option<BigRational> = None;
        let mut identity_ok = true;
        let mut checked = 0u64;
        for perm in (0..n).permutations(n) {
            checked += 1;
            let common = self.bijection_common_size(&x1, &x2, &perm)?;
            let bijection: Vec<(String, String)> = perm
                .iter()
                .enumerate()
                .map(|(i, &j)| (x1.vertex_id(i).to_string(), x2.vertex_id(j).to_string()))
                .collect();
            let cost = bijection_cost(&x1, &x2, &self.costs, &bijection)?;
            if cost != &(&s1 + &s2) - &(&two * &common) {
                identity_ok = false;
            }
            match &best_common {
                Some(b) if *b >= common => {}
                _ => best_common = Some(common),
            }
            match &min_padded_cost {
                Some(b) if *b <= cost => {}
                _ => min_padded_cost = Some(cost),
            }
        }
        let s12 = best_common.expect("at least one bijection");
        let model_distance = &(&s1 + &s2) - &(&two * &s12);
        let min_padded = min_padded_cost.expect("at least one bijection");
        Ok(CorrespondenceReport {
            equal: ged.distance == model_distance,
            completion_stable: ged.distance == min_padded,
            edit_distance: ged.distance,
            model_distance,
            bijections_checked: checked,
            per_bijection_identity: identity_ok,
        })
    }
}

/// Canonical form of the embedded graph; distinct inputs up to
/// isomorphism must embed to distinct forms.
pub fn embed_canonical(ctx: &GedCorrespondence, g: &LabeledGraph) -> Result<CanonicalForm> {
    canonical_form_with_cap(&ctx.embed(g)?, 2 * ctx.n)
}
