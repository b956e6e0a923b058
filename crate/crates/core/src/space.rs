//! Finite metric spaces and the constructive transformation into an
//! explicit finite model whose symmetric-difference distance restricted
//! to the original points recovers the input metric exactly.
//!
//! The derived model contains one element per point plus one element
//! per nonempty, connectivity-inducing subset of the complete graph's
//! edges over the points. An edge subset precedes a point when the
//! point is an endpoint of one of its edges; edge subsets are ordered
//! by reverse inclusion; the full edge set is the global minimum.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AxiomReport, AxiomTag, FiniteMcsModel, Violation};
use crate::rational::{format_ratio, parse_ratio, ratio};

/// Cap on the point count for the edge-subset enumeration: 6 points
/// give 15 edges, i.e. 32768 subsets to scan.
pub const ENUMERATION_POINT_CAP: usize = 6;

#[derive(Serialize, Deserialize)]
struct SpaceDoc {
    points: Vec<String>,
    dist: Vec<Vec<String>>,
}

/// A finite point set with an exact rational distance table. The table
/// is validated (M1-M4, exactly) on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    points: Vec<String>,
    dist: Vec<Vec<BigRational>>,
}

impl FiniteMetricSpace {
    pub fn new(points: Vec<String>, dist: Vec<Vec<BigRational>>) -> Result<Self> {
        if dist.len() != points.len() || dist.iter().any(|row| row.len() != points.len()) {
            return Err(Error::InvalidInput(
                "distance table shape does not match point count".into(),
            ));
        }
        let mut seen = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::InvalidInput("empty point id".into()));
            }
            if seen.insert(p.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate point id `{p}`")));
            }
        }
        for row in &dist {
            for d in row {
                if d.is_negative() {
                    return Err(Error::InvalidInput(format!(
                        "negative distance {}",
                        format_ratio(d)
                    )));
                }
            }
        }
        let report = Self::validate_table(&points, &dist);
        if let Some(v) = report.violations().first() {
            return Err(Error::InvalidInput(format!(
                "distance table violates {} at ({})",
                v.axiom,
                v.witness.join(", ")
            )));
        }
        Ok(FiniteMetricSpace { points, dist })
    }

    /// Exact metric-law check of an arbitrary table, first witness per
    /// law. Usable on tables that have not been accepted yet.
    pub fn validate_table(points: &[String], dist: &[Vec<BigRational>]) -> AxiomReport {
        let n = points.len();
        let mut violations = Vec::new();
        'm1: for i in 0..n {
            if !dist[i][i].is_zero() {
                violations.push(Violation::new(AxiomTag::M1, &[&points[i]]));
                break 'm1;
            }
        }
        'm2: for i in 0..n {
            for j in 0..n {
                if dist[i][j] != dist[j][i] {
                    violations.push(Violation::new(AxiomTag::M2, &[&points[i], &points[j]]));
                    break 'm2;
                }
            }
        }
        'm3: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if dist[i][k] > &dist[i][j] + &dist[j][k] {
                        violations.push(Violation::new(
                            AxiomTag::M3,
                            &[&points[i], &points[j], &points[k]],
                        ));
                        break 'm3;
                    }
                }
            }
        }
        'm4: for i in 0..n {
            for j in 0..n {
                if i != j && dist[i][j].is_zero() {
                    violations.push(Violation::new(AxiomTag::M4, &[&points[i], &points[j]]));
                    break 'm4;
                }
            }
        }
        AxiomReport::new(violations)
    }

    /// Replay an M-law violation against this table shape (for reports
    /// produced by `validate_table` on possibly invalid tables).
    pub fn replay_table(points: &[String], dist: &[Vec<BigRational>], v: &Violation) -> bool {
        let idx = |k: usize| -> Option<usize> {
            v.witness
                .get(k)
                .and_then(|id| points.iter().position(|p| p == id))
        };
        match v.axiom {
            AxiomTag::M1 => idx(0).is_some_and(|i| !dist[i][i].is_zero()),
            AxiomTag::M2 => match (idx(0), idx(1)) {
                (Some(i), Some(j)) => dist[i][j] != dist[j][i],
                _ => false,
            },
            AxiomTag::M3 => match (idx(0), idx(1), idx(2)) {
                (Some(i), Some(j), Some(k)) => dist[i][k] > &dist[i][j] + &dist[j][k],
                _ => false,
            },
            AxiomTag::M4 => match (idx(0), idx(1)) {
                (Some(i), Some(j)) => i != j && dist[i][j].is_zero(),
                _ => false,
            },
            _ => false,
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let (points, dist) = Self::parse_table(text)?;
        FiniteMetricSpace::new(points, dist)
    }

    /// Parse the JSON document without running the metric-law checks,
    /// so invalid tables can still be loaded and reported on.
    pub fn parse_table(text: &str) -> Result<(Vec<String>, Vec<Vec<BigRational>>)> {
        let doc: SpaceDoc = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("metric space JSON: {e}")))?;
        let dist = doc
            .dist
            .iter()
            .map(|row| row.iter().map(|d| parse_ratio(d)).collect())
            .collect::<Result<Vec<Vec<BigRational>>>>()?;
        if dist.len() != doc.points.len() || dist.iter().any(|r| r.len() != doc.points.len()) {
            return Err(Error::InvalidInput(
                "distance table shape does not match point count".into(),
            ));
        }
        Ok((doc.points, dist))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "points": self.points,
            "dist": self.dist.iter().map(|row| {
                row.iter().map(format_ratio).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn distance_at(&self, i: usize, j: usize) -> &BigRational {
        &self.dist[i][j]
    }

    pub fn distance(&self, a: &str, b: &str) -> Result<&BigRational> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        Ok(&self.dist[i][j])
    }

    pub fn index_of(&self, p: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|q| q == p)
            .ok_or_else(|| Error::UnknownElement(p.to_string()))
    }
}

/// An element of the derived model: an original point, or a nonempty
/// set of point pairs whose union induces a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivedElement {
    Point(String),
    EdgeSet(Vec<(usize, usize)>),
}

/// Identifier for an edge-set element, e.g. `{a|b,a|c}`. Point ids must
/// therefore avoid `{`, `}`, `|`, and `,`.
pub fn edge_set_id(points: &[String], edges: &[(usize, usize)]) -> String {
    let body: Vec<String> = edges
        .iter()
        .map(|&(i, j)| format!("{}|{}", points[i], points[j]))
        .collect();
    format!("{{{}}}", body.join(","))
}

/// The derived model plus the mapping from element ids back to their
/// structure.
#[derive(Clone, Debug)]
pub struct SpaceModel {
    pub model: FiniteMcsModel,
    pub elements: BTreeMap<String, DerivedElement>,
    pub theta: BigRational,
}

/// All nonempty subsets of the complete graph's edges over `n` points
/// whose endpoints induce a connected graph, in ascending bitmask order
/// over edges sorted by (i, j).
pub fn enumerate_connected_edge_subsets(n: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    if n > ENUMERATION_POINT_CAP {
        return Err(Error::cap("metric space points", ENUMERATION_POINT_CAP, n));
    }
    let all_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let m = all_edges.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << m) {
        let edges: Vec<(usize, usize)> = (0..m)
            .filter(|&k| mask >> k & 1 == 1)
            .map(|k| all_edges[k])
            .collect();
        if endpoints_connected(n, &edges) {
            out.push(edges);
        }
    }
    Ok(out)
}

/// Union-find connectivity over the endpoints actually used.
fn endpoints_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let up = parent[x];
            let root = find(parent, up);
            parent[x] = root;
        }
        parent[x]
    }
    for &(i, j) in edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        parent[ri] = rj;
    }
    let used: Vec<usize> = (0..n)
        .filter(|&v| edges.iter().any(|&(i, j)| i == v || j == v))
        .collect();
    match used.first() {
        None => false,
        Some(&first) => {
            let root = find(&mut parent, first);
            used.iter().all(|&v| find(&mut parent, v) == root)
        }
    }
}

/// Build the derived model. Points get size R = theta + half the total
/// distance mass; an edge set gets R minus half its own distance mass,
/// leaving theta for the full edge set, the unique global minimum.
pub fn build_model(space: &FiniteMetricSpace, theta: &BigRational) -> Result<SpaceModel> {
    if *theta <= BigRational::zero() {
        return Err(Error::InvalidInput(format!(
            "theta must be strictly positive, got {}",
            format_ratio(theta)
        )));
    }
    for p in space.points() {
        if p.contains(['{', '}', '|', ',']) {
            return Err(Error::InvalidInput(format!(
                "point id `{p}` contains a character reserved for derived element ids"
            )));
        }
    }
    let n = space.len();
    let subsets = enumerate_connected_edge_subsets(n)?;

    let half = ratio(1, 2);
    let mut total = BigRational::zero();
    for i in 0..n {
        for j in i + 1..n {
            total += space.distance_at(i, j);
        }
    }
    let r = theta + &half * &total;

    let mut elements: Vec<(String, BigRational)> = Vec::new();
    let mut derived: Vec<DerivedElement> = Vec::new();
    for p in space.points() {
        elements.push((p.clone(), r.clone()));
        derived.push(DerivedElement::Point(p.clone()));
    }
    for edges in &subsets {
        let mut mass = BigRational::zero();
        for &(i, j) in edges {
            mass += space.distance_at(i, j);
        }
        elements.push((edge_set_id(space.points(), edges), &r - &(&half * &mass)));
        derived.push(DerivedElement::EdgeSet(edges.clone()));
    }

    let rel = |a: &DerivedElement, b: &DerivedElement| -> bool {
        match (a, b) {
            (DerivedElement::Point(p), DerivedElement::Point(q)) => p == q,
            (DerivedElement::EdgeSet(es), DerivedElement::Point(q)) => {
                let qi = space.points().iter().position(|p| p == q).unwrap();
                es.iter().any(|&(i, j)| i == qi || j == qi)
            }
            (DerivedElement::EdgeSet(e1), DerivedElement::EdgeSet(e2)) => {
                e2.iter().all(|e| e1.contains(e))
            }
            (DerivedElement::Point(_), DerivedElement::EdgeSet(_)) => false,
        }
    };
    let table: Vec<Vec<bool>> = derived
        .iter()
        .map(|a| derived.iter().map(|b| rel(a, b)).collect())
        .collect();

    let index = elements
        .iter()
        .map(|(id, _)| id.clone())
        .zip(derived)
        .collect();
    let model = FiniteMcsModel::from_table(elements, table)?;
    Ok(SpaceModel {
        model,
        elements: index,
        theta: theta.clone(),
    })
}

/// Check, for every point pair, that the model's maximum common size
/// reproduces the input distance through d = s(a) + s(b) - 2 s'({a,b}),
/// and that the single-edge element is among the maximizers.
pub fn verify_recovery(space: &FiniteMetricSpace, sm: &SpaceModel) -> Result<AxiomReport> {
    let mut violations = Vec::new();
    let n = space.len();
    let two = ratio(2, 1);
    for i in 0..n {
        for j in i..n {
            let a = &space.points()[i];
            let b = &space.points()[j];
            let s_a = sm.model.size_of(a)?;
            let s_b = sm.model.size_of(b)?;
            let s_ab = sm.model.max_common_size(a, b)?;
            let recovered = &(s_a + s_b) - &(&two * &s_ab);
            if recovered != *space.distance_at(i, j) {
                violations.push(Violation::new(AxiomTag::Recovery, &[a, b]));
                continue;
            }
            if i != j {
                let edge_id = edge_set_id(space.points(), &[(i, j)]);
                if !sm.model.max_common_subelements(a, b)?.contains(&edge_id) {
                    violations.push(Violation::new(AxiomTag::PathWitness, &[a, b]));
                }
            }
        }
    }
    Ok(AxiomReport::new(violations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{MetricKind, DEFAULT_ELEMENT_CAP};
    use crate::rational::ratio_int;

    fn space(points: &[&str], table: &[&[(i64, i64)]]) -> FiniteMetricSpace {
        let dist = table
            .iter()
            .map(|row| row.iter().map(|&(n, d)| ratio(n, d)).collect())
            .collect();
        FiniteMetricSpace::new(points.iter().map(|p| p.to_string()).collect(), dist).unwrap()
    }

    fn two_point() -> FiniteMetricSpace {
        space(
            &["a", "b"],
            &[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]],
        )
    }

    #[test]
    fn validation_rejects_non_metrics() {
        let points = vec!["p".to_string(), "q".to_string(), "r".to_string()];
        let ok = vec![
            vec![ratio_int(0), ratio_int(1), ratio_int(1)],
            vec![ratio_int(1), ratio_int(0), ratio_int(1)],
            vec![ratio_int(1), ratio_int(1), ratio_int(0)],
        ];
        assert!(FiniteMetricSpace::validate_table(&points, &ok).passed());

        let mut broken = ok.clone();
        broken[0][2] = ratio_int(5);
        broken[2][0] = ratio_int(5);
        let report = FiniteMetricSpace::validate_table(&points, &broken);
        assert_eq!(report.tags(), vec![AxiomTag::M3]);
        assert!(FiniteMetricSpace::replay_table(
            &points,
            &broken,
            &report.violations()[0]
        ));
        assert!(FiniteMetricSpace::new(points, broken).is_err());
    }

    #[test]
    fn subset_enumeration_counts() {
        assert_eq!(enumerate_connected_edge_subsets(2).unwrap().len(), 1);
        // three single edges, three two-edge paths, one triangle
        let z3 = enumerate_connected_edge_subsets(3).unwrap();
        assert_eq!(z3.len(), 7);
        // every returned subset passes an independent connectivity check
        for edges in &z3 {
            let mut reach = std::collections::BTreeSet::new();
            let verts: Vec<usize> = edges.iter().flat_map(|&(i, j)| [i, j]).collect();
            let mut stack = vec![verts[0]];
            while let Some(v) = stack.pop() {
                if reach.insert(v) {
                    for &(i, j) in edges {
                        if i == v {
                            stack.push(j);
                        }
                        if j == v {
                            stack.push(i);
                        }
                    }
                }
            }
            assert!(verts.iter().all(|v| reach.contains(v)));
        }
        assert!(enumerate_connected_edge_subsets(7).is_err());
    }

    #[test]
    fn two_point_model_sizes() {
        let sm = build_model(&two_point(), &ratio_int(1)).unwrap();
        assert_eq!(sm.model.len(), 3);
        assert_eq!(*sm.model.size_of("a").unwrap(), ratio(3, 2));
        assert_eq!(*sm.model.size_of("b").unwrap(), ratio(3, 2));
        assert_eq!(*sm.model.size_of("{a|b}").unwrap(), ratio_int(1));
        // the full edge set is the unique global minimum, at size theta
        assert_eq!(sm.model.min_size_element().unwrap(), "{a|b}");
        assert!(sm.model.check_axioms(DEFAULT_ELEMENT_CAP).unwrap().passed());
    }

    #[test]
    fn two_point_recovery() {
        let sp = two_point();
        let sm = build_model(&sp, &ratio_int(1)).unwrap();
        // d(a,b) = 3/2 + 3/2 - 2*1 = 1
        assert!(verify_recovery(&sp, &sm).unwrap().passed());
        assert_eq!(
            sm.model
                .distance(MetricKind::SymmetricDifference, "a", "b")
                .unwrap(),
            ratio_int(1)
        );
    }

    #[test]
    fn single_point_space_degenerates_gracefully() {
        let sp = space(&["solo"], &[&[(0, 1)]]);
        let sm = build_model(&sp, &ratio_int(1)).unwrap();
        assert_eq!(sm.model.len(), 1);
        assert!(verify_recovery(&sp, &sm).unwrap().passed());
        assert_eq!(sm.model.min_size_element().unwrap(), "solo");
    }

    #[test]
    fn three_point_model_verifies_and_recovers() {
        let sp = space(
            &["p", "q", "r"],
            &[
                &[(0, 1), (1, 1), (3, 2)],
                &[(1, 1), (0, 1), (1, 1)],
                &[(3, 2), (1, 1), (0, 1)],
            ],
        );
        let sm = build_model(&sp, &ratio(1, 3)).unwrap();
        assert_eq!(sm.model.len(), 3 + 7);
        assert!(sm.model.check_axioms(DEFAULT_ELEMENT_CAP).unwrap().passed());
        assert!(sm
            .model
            .check_aux_inequality(DEFAULT_ELEMENT_CAP)
            .unwrap()
            .passed());
        assert!(verify_recovery(&sp, &sm).unwrap().passed());
        // full edge set has size theta and is the global minimum
        let full = edge_set_id(sp.points(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(*sm.model.size_of(&full).unwrap(), ratio(1, 3));
        assert_eq!(sm.model.min_size_element().unwrap(), full);
    }

    #[test]
    fn theta_must_be_positive() {
        assert!(build_model(&two_point(), &ratio_int(0)).is_err());
        assert!(build_model(&two_point(), &ratio_int(-1)).is_err());
    }

    #[test]
    fn reserved_characters_in_point_ids_rejected() {
        let sp = FiniteMetricSpace::new(
            vec!["a|b".to_string(), "c".to_string()],
            vec![
                vec![ratio_int(0), ratio_int(1)],
                vec![ratio_int(1), ratio_int(0)],
            ],
        )
        .unwrap();
        assert!(build_model(&sp, &ratio_int(1)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let sp = two_point();
        let text = serde_json::to_string(&sp.to_json()).unwrap();
        assert_eq!(FiniteMetricSpace::from_json_str(&text).unwrap(), sp);
        let bad = r#"{"points":["a","b"],"dist":[["0","1"],["2","0"]]}"#;
        assert!(FiniteMetricSpace::from_json_str(bad).is_err());
    }
}
