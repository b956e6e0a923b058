//! Finite common-subelement models: a finite domain, a partial order,
//! and a size function, together with exhaustive axiom checkers and the
//! four metrics derived from maximum common subelement sizes.

use std::collections::BTreeMap;
use std::fmt;

use num::rational::BigRational;
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_ratio, parse_ratio, ratio_int};

/// Default cap on the number of elements for the exhaustive checkers;
/// the triple scans are cubic.
pub const DEFAULT_ELEMENT_CAP: usize = 64;

/// The four metric formulas over (s(x1), s(x2), s'({x1,x2})).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MetricKind {
    /// s1 + s2 - 2*s12
    SymmetricDifference,
    /// max(s1, s2) - s12
    MaxMinusCommon,
    /// 1 - s12 / max(s1, s2), with 0 when s1 = s2 = 0
    NormalizedMax,
    /// 1 - s12 / (s1 + s2 - s12), with 0 when s1 = s2 = 0
    NormalizedUnion,
}

impl MetricKind {
    pub const ALL: [MetricKind; 4] = [
        MetricKind::SymmetricDifference,
        MetricKind::MaxMinusCommon,
        MetricKind::NormalizedMax,
        MetricKind::NormalizedUnion,
    ];

    pub fn code(self) -> &'static str {
        match self {
            MetricKind::SymmetricDifference => "da",
            MetricKind::MaxMinusCommon => "db",
            MetricKind::NormalizedMax => "dc",
            MetricKind::NormalizedUnion => "dd",
        }
    }

    pub fn from_code(code: &str) -> Result<MetricKind> {
        match code {
            "da" => Ok(MetricKind::SymmetricDifference),
            "db" => Ok(MetricKind::MaxMinusCommon),
            "dc" => Ok(MetricKind::NormalizedMax),
            "dd" => Ok(MetricKind::NormalizedUnion),
            other => Err(Error::InvalidInput(format!(
                "unknown metric `{other}` (expected da, db, dc, or dd)"
            ))),
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Tags identifying which law a checker found violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomTag {
    R1,
    R2,
    R3,
    S1,
    S2,
    A1Prime,
    A2,
    M1,
    M2,
    M3,
    M4,
    /// The pairwise support inequality s'(x1,x2) + s'(x2,x3) <= s(x2) + s'(x1,x3).
    Aux,
    /// Distance recovery d(a,b) = s(a) + s(b) - 2 s'({a,b}) on a derived model.
    Recovery,
    /// The single-edge element must be among the maximum common subelements
    /// of its two endpoints in a derived model.
    PathWitness,
}

impl AxiomTag {
    pub fn as_str(self) -> &'static str {
        match self {
            AxiomTag::R1 => "R1",
            AxiomTag::R2 => "R2",
            AxiomTag::R3 => "R3",
            AxiomTag::S1 => "S1",
            AxiomTag::S2 => "S2",
            AxiomTag::A1Prime => "A1'",
            AxiomTag::A2 => "A2",
            AxiomTag::M1 => "M1",
            AxiomTag::M2 => "M2",
            AxiomTag::M3 => "M3",
            AxiomTag::M4 => "M4",
            AxiomTag::Aux => "AUX",
            AxiomTag::Recovery => "RECOVERY",
            AxiomTag::PathWitness => "PATH-WITNESS",
        }
    }
}

impl fmt::Display for AxiomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One failed law together with the element tuple that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: AxiomTag,
    pub witness: Vec<String>,
}

impl Violation {
    pub fn new(axiom: AxiomTag, witness: &[&str]) -> Self {
        Violation {
            axiom,
            witness: witness.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// Outcome of an exhaustive check: `passed` iff `violations` is empty.
/// At most one witness is reported per failed law, and it is the
/// lexicographically smallest (by element identifier) the scan finds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn new(violations: Vec<Violation>) -> Self {
        AxiomReport { violations }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn tags(&self) -> Vec<AxiomTag> {
        self.violations.iter().map(|v| v.axiom).collect()
    }

    pub fn merge(mut self, other: AxiomReport) -> AxiomReport {
        self.violations.extend(other.violations);
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "passed": self.passed(),
            "violations": self.violations.iter().map(|v| serde_json::json!({
                "axiom": v.axiom.as_str(),
                "witness": v.witness,
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ModelDoc {
    elements: Vec<String>,
    order: Vec<(String, String)>,
    size: BTreeMap<String, String>,
}

/// An explicit finite model: elements, an order relation table, and an
/// exact-rational size per element. Elements are stored sorted by
/// identifier so scans report lexicographically smallest witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMcsModel {
    ids: Vec<String>,
    index: BTreeMap<String, usize>,
    order: Vec<Vec<bool>>,
    size: Vec<BigRational>,
}

impl FiniteMcsModel {
    /// Build from element/size pairs and explicit order pairs. The
    /// reflexive closure is always added; the transitive closure is not.
    pub fn new(
        elements: Vec<(String, BigRational)>,
        order_pairs: &[(String, String)],
    ) -> Result<Self> {
        let mut model = Self::from_table_unsorted(elements, None)?;
        for (a, b) in order_pairs {
            let i = model.index_of(a)?;
            let j = model.index_of(b)?;
            model.order[i][j] = true;
        }
        Ok(model)
    }

    /// Build from element/size pairs plus a full relation matrix aligned
    /// with the given element order. Reflexivity is forced.
    pub fn from_table(
        elements: Vec<(String, BigRational)>,
        table: Vec<Vec<bool>>,
    ) -> Result<Self> {
        if table.len() != elements.len() || table.iter().any(|row| row.len() != elements.len()) {
            return Err(Error::InvalidInput(
                "order table shape does not match element count".into(),
            ));
        }
        Self::from_table_unsorted(elements, Some(table))
    }

    fn from_table_unsorted(
        elements: Vec<(String, BigRational)>,
        table: Option<Vec<Vec<bool>>>,
    ) -> Result<Self> {
        let n = elements.len();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| elements[a].0.cmp(&elements[b].0));

        let mut ids = Vec::with_capacity(n);
        let mut size = Vec::with_capacity(n);
        let mut index = BTreeMap::new();
        for (new_idx, &old_idx) in perm.iter().enumerate() {
            let (id, s) = &elements[old_idx];
            if s.is_negative() {
                return Err(Error::InvalidInput(format!(
                    "size of `{id}` is negative ({})",
                    format_ratio(s)
                )));
            }
            if index.insert(id.clone(), new_idx).is_some() {
                return Err(Error::InvalidInput(format!("duplicate element id `{id}`")));
            }
            ids.push(id.clone());
            size.push(s.clone());
        }

        let mut order = vec![vec![false; n]; n];
        if let Some(table) = table {
            for (new_i, &old_i) in perm.iter().enumerate() {
                for (new_j, &old_j) in perm.iter().enumerate() {
                    order[new_i][new_j] = table[old_i][old_j];
                }
            }
        }
        for (i, row) in order.iter_mut().enumerate() {
            row[i] = true;
        }
        Ok(FiniteMcsModel {
            ids,
            index,
            order,
            size,
        })
    }

    pub fn from_json_str(text: &str, close_order: bool) -> Result<Self> {
        let doc: ModelDoc = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("model JSON: {e}")))?;
        let mut elements = Vec::with_capacity(doc.elements.len());
        for id in &doc.elements {
            let s = doc.size.get(id).ok_or_else(|| {
                Error::InvalidInput(format!("no size given for element `{id}`"))
            })?;
            elements.push((id.clone(), parse_ratio(s)?));
        }
        for id in doc.size.keys() {
            if !doc.elements.contains(id) {
                return Err(Error::InvalidInput(format!(
                    "size given for unknown element `{id}`"
                )));
            }
        }
        let mut model = Self::new(elements, &doc.order)?;
        if close_order {
            model.transitive_close();
        }
        Ok(model)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let order: Vec<(String, String)> = self
            .ids
            .iter()
            .enumerate()
            .flat_map(|(i, a)| {
                self.ids
                    .iter()
                    .enumerate()
                    .filter(move |&(j, _)| i != j && self.order[i][j])
                    .map(move |(_, b)| (a.clone(), b.clone()))
            })
            .collect();
        let size: BTreeMap<&String, String> = self
            .ids
            .iter()
            .zip(&self.size)
            .map(|(id, s)| (id, format_ratio(s)))
            .collect();
        serde_json::json!({
            "elements": self.ids,
            "order": order,
            "size": size,
        })
    }

    /// Warshall closure, for loaders that opt into `--close-order`.
    pub fn transitive_close(&mut self) {
        let n = self.ids.len();
        for k in 0..n {
            for i in 0..n {
                if self.order[i][k] {
                    for j in 0..n {
                        if self.order[k][j] {
                            self.order[i][j] = true;
                        }
                    }
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    pub fn size_at(&self, idx: usize) -> &BigRational {
        &self.size[idx]
    }

    pub fn size_of(&self, id: &str) -> Result<&BigRational> {
        Ok(&self.size[self.index_of(id)?])
    }

    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.order[a][b]
    }

    pub fn leq(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.order[self.index_of(a)?][self.index_of(b)?])
    }

    /// All elements below every member of `subset`; the empty subset
    /// yields every element. Output is sorted by identifier.
    pub fn common_subelements(&self, subset: &[&str]) -> Result<Vec<String>> {
        let idxs = subset
            .iter()
            .map(|id| self.index_of(id))
            .collect::<Result<Vec<_>>>()?;
        Ok(self
            .common_subelements_idx(&idxs)
            .into_iter()
            .map(|i| self.ids[i].clone())
            .collect())
    }

    fn common_subelements_idx(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.ids.len())
            .filter(|&x| subset.iter().all(|&y| self.order[x][y]))
            .collect()
    }

    fn mcs_size_idx(&self, x1: usize, x2: usize) -> Option<BigRational> {
        let mut best: Option<&BigRational> = None;
        for x in 0..self.ids.len() {
            if self.order[x][x1] && self.order[x][x2] {
                match best {
                    Some(b) if *b >= self.size[x] => {}
                    _ => best = Some(&self.size[x]),
                }
            }
        }
        best.cloned()
    }

    /// Maximum size among the common subelements of the pair.
    pub fn max_common_size(&self, x1: &str, x2: &str) -> Result<BigRational> {
        let (i, j) = (self.index_of(x1)?, self.index_of(x2)?);
        self.mcs_size_idx(i, j).ok_or_else(|| {
            Error::ModelViolation(format!(
                "`{x1}` and `{x2}` have no common subelement"
            ))
        })
    }

    /// All common subelements attaining the maximum size, sorted by id.
    pub fn max_common_subelements(&self, x1: &str, x2: &str) -> Result<Vec<String>> {
        let best = self.max_common_size(x1, x2)?;
        let (i, j) = (self.index_of(x1)?, self.index_of(x2)?);
        Ok((0..self.ids.len())
            .filter(|&x| self.order[x][i] && self.order[x][j] && self.size[x] == best)
            .map(|x| self.ids[x].clone())
            .collect())
    }

    /// The unique element of minimum size; it must be below every
    /// element. A tie or a non-global minimum is a model violation.
    pub fn min_size_element(&self) -> Result<String> {
        let mut min: Option<usize> = None;
        for i in 0..self.ids.len() {
            match min {
                Some(m) if self.size[m] <= self.size[i] => {}
                _ => min = Some(i),
            }
        }
        let m = min.ok_or_else(|| Error::ModelViolation("model has no elements".into()))?;
        for i in 0..self.ids.len() {
            if i != m && self.size[i] == self.size[m] {
                return Err(Error::ModelViolation(format!(
                    "two distinct elements share the minimum size: `{}` and `{}`",
                    self.ids[m], self.ids[i]
                )));
            }
        }
        for i in 0..self.ids.len() {
            if !self.order[m][i] {
                return Err(Error::ModelViolation(format!(
                    "minimum-size element `{}` is not below `{}`",
                    self.ids[m], self.ids[i]
                )));
            }
        }
        Ok(self.ids[m].clone())
    }

    pub fn distance(&self, kind: MetricKind, x1: &str, x2: &str) -> Result<BigRational> {
        let s1 = self.size_of(x1)?.clone();
        let s2 = self.size_of(x2)?.clone();
        let s12 = self.max_common_size(x1, x2)?;
        metric_value(kind, &s1, &s2, &s12)
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.ids.len() > cap {
            return Err(Error::cap("model elements", cap, self.ids.len()));
        }
        Ok(())
    }

    /// Matrix of maximum common subelement sizes; `None` where a pair
    /// has no common subelement at all.
    fn mcs_size_matrix(&self) -> Vec<Vec<Option<BigRational>>> {
        let n = self.ids.len();
        let mut m = vec![vec![None; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = self.mcs_size_idx(i, j);
                m[i][j] = v.clone();
                m[j][i] = v;
            }
        }
        m
    }

    /// Exhaustively verify the order laws (R1-R3), the size-function
    /// laws (S1-S2), finite common-subelement existence (A1'), and the
    /// overlap inequality (A2), reporting the first witness per law.
    pub fn check_axioms(&self, cap: usize) -> Result<AxiomReport> {
        self.check_cap(cap)?;
        let n = self.ids.len();
        let o = &self.order;
        let mut violations = Vec::new();

        'r1: for i in 0..n {
            if !o[i][i] {
                violations.push(Violation::new(AxiomTag::R1, &[&self.ids[i]]));
                break 'r1;
            }
        }

        'r2: for i in 0..n {
            for j in 0..n {
                if !o[i][j] {
                    continue;
                }
                for k in 0..n {
                    if o[j][k] && !o[i][k] {
                        violations.push(Violation::new(
                            AxiomTag::R2,
                            &[&self.ids[i], &self.ids[j], &self.ids[k]],
                        ));
                        break 'r2;
                    }
                }
            }
        }

        'r3: for i in 0..n {
            for j in 0..n {
                if i != j && o[i][j] && o[j][i] {
                    violations.push(Violation::new(AxiomTag::R3, &[&self.ids[i], &self.ids[j]]));
                    break 'r3;
                }
            }
        }

        's1: for i in 0..n {
            for j in 0..n {
                if o[i][j] && self.size[i] > self.size[j] {
                    violations.push(Violation::new(AxiomTag::S1, &[&self.ids[i], &self.ids[j]]));
                    break 's1;
                }
            }
        }

        's2: for i in 0..n {
            for j in 0..n {
                if i != j && o[i][j] && self.size[i] == self.size[j] {
                    violations.push(Violation::new(AxiomTag::S2, &[&self.ids[i], &self.ids[j]]));
                    break 's2;
                }
            }
        }

        let mcs = self.mcs_size_matrix();

        'a1: for i in 0..n {
            for j in 0..n {
                if mcs[i][j].is_none() {
                    violations.push(Violation::new(
                        AxiomTag::A1Prime,
                        &[&self.ids[i], &self.ids[j]],
                    ));
                    break 'a1;
                }
            }
        }

        'a2: for x1 in 0..n {
            for x2 in 0..n {
                for x in 0..n {
                    if !(o[x1][x] && o[x2][x]) {
                        continue;
                    }
                    let ok = match &mcs[x1][x2] {
                        Some(s12) => self.size[x] >= &(&self.size[x1] + &self.size[x2]) - s12,
                        None => false,
                    };
                    if !ok {
                        violations.push(Violation::new(
                            AxiomTag::A2,
                            &[&self.ids[x1], &self.ids[x2], &self.ids[x]],
                        ));
                        break 'a2;
                    }
                }
            }
        }

        Ok(AxiomReport::new(violations))
    }

    /// Exhaustively verify M1-M4 for `distance` under the given metric.
    pub fn check_metric_laws(&self, kind: MetricKind, cap: usize) -> Result<AxiomReport> {
        self.check_cap(cap)?;
        let n = self.ids.len();
        let mcs = self.mcs_size_matrix();
        let mut d = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let s12 = mcs[i][j].as_ref().ok_or_else(|| {
                    Error::ModelViolation(format!(
                        "`{}` and `{}` have no common subelement",
                        self.ids[i], self.ids[j]
                    ))
                })?;
                d[i][j] = metric_value(kind, &self.size[i], &self.size[j], s12)?;
            }
        }

        let mut violations = Vec::new();

        'm1: for i in 0..n {
            if !d[i][i].is_zero() {
                violations.push(Violation::new(AxiomTag::M1, &[&self.ids[i]]));
                break 'm1;
            }
        }

        'm2: for i in 0..n {
            for j in 0..n {
                if d[i][j] != d[j][i] {
                    violations.push(Violation::new(AxiomTag::M2, &[&self.ids[i], &self.ids[j]]));
                    break 'm2;
                }
            }
        }

        'm3: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if d[i][k] > &d[i][j] + &d[j][k] {
                        violations.push(Violation::new(
                            AxiomTag::M3,
                            &[&self.ids[i], &self.ids[j], &self.ids[k]],
                        ));
                        break 'm3;
                    }
                }
            }
        }

        'm4: for i in 0..n {
            for j in 0..n {
                if i != j && d[i][j].is_zero() {
                    violations.push(Violation::new(AxiomTag::M4, &[&self.ids[i], &self.ids[j]]));
                    break 'm4;
                }
            }
        }

        Ok(AxiomReport::new(violations))
    }

    /// Verify s'(x1,x2) + s'(x2,x3) <= s(x2) + s'(x1,x3) over all triples.
    pub fn check_aux_inequality(&self, cap: usize) -> Result<AxiomReport> {
        self.check_cap(cap)?;
        let n = self.ids.len();
        let mcs = self.mcs_size_matrix();
        let get = |i: usize, j: usize| -> Result<&BigRational> {
            mcs[i][j].as_ref().ok_or_else(|| {
                Error::ModelViolation(format!(
                    "`{}` and `{}` have no common subelement",
                    self.ids[i], self.ids[j]
                ))
            })
        };
        let mut violations = Vec::new();
        'outer: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = get(i, j)? + get(j, k)?;
                    let rhs = &self.size[j] + get(i, k)?;
                    if lhs > rhs {
                        violations.push(Violation::new(
                            AxiomTag::Aux,
                            &[&self.ids[i], &self.ids[j], &self.ids[k]],
                        ));
                        break 'outer;
                    }
                }
            }
        }
        Ok(AxiomReport::new(violations))
    }

    /// Re-evaluate a reported model-law violation against this model.
    /// Returns true iff the witness still exhibits the violation.
    pub fn replay(&self, v: &Violation) -> bool {
        let idx = |k: usize| -> Option<usize> {
            v.witness.get(k).and_then(|id| self.index.get(id)).copied()
        };
        match v.axiom {
            AxiomTag::R1 => idx(0).is_some_and(|i| !self.order[i][i]),
            AxiomTag::R2 => match (idx(0), idx(1), idx(2)) {
                (Some(i), Some(j), Some(k)) => {
                    self.order[i][j] && self.order[j][k] && !self.order[i][k]
                }
                _ => false,
            },
            AxiomTag::R3 => match (idx(0), idx(1)) {
                (Some(i), Some(j)) => i != j && self.order[i][j] && self.order[j][i],
                _ => false,
            },
            AxiomTag::S1 => match (idx(0), idx(1)) {
                (Some(i), Some(j)) => self.order[i][j] && self.size[i] > self.size[j],
                _ => false,
            },
            AxiomTag::S2 => match (idx(0), idx(1)) {
                (Some(i), Some(j)) => {
                    i != j && self.order[i][j] && self.size[i] == self.size[j]
                }
                _ => false,
            },
            AxiomTag::A1Prime => match (idx(0), idx(1)) {
                (Some(i), Some(j)) => self.mcs_size_idx(i, j).is_none(),
                _ => false,
            },
            AxiomTag::A2 => match (idx(0), idx(1), idx(2)) {
                (Some(x1), Some(x2), Some(x)) => {
                    self.order[x1][x]
                        && self.order[x2][x]
                        && match self.mcs_size_idx(x1, x2) {
                            Some(s12) => {
                                self.size[x] < &(&self.size[x1] + &self.size[x2]) - &s12
                            }
                            None => true,
                        }
                }
                _ => false,
            },
            AxiomTag::Aux => match (idx(0), idx(1), idx(2)) {
                (Some(i), Some(j), Some(k)) => {
                    match (
                        self.mcs_size_idx(i, j),
                        self.mcs_size_idx(j, k),
                        self.mcs_size_idx(i, k),
                    ) {
                        (Some(a), Some(b), Some(c)) => a + b > &self.size[j] + c,
                        _ => false,
                    }
                }
                _ => false,
            },
            _ => false,
        }
    }

    /// Re-evaluate a reported metric-law violation under `kind`.
    pub fn replay_metric(&self, kind: MetricKind, v: &Violation) -> bool {
        let d = |a: &str, b: &str| self.distance(kind, a, b);
        let w = &v.witness;
        match v.axiom {
            AxiomTag::M1 => w
                .first()
                .and_then(|x| d(x, x).ok())
                .is_some_and(|v| !v.is_zero()),
            AxiomTag::M2 => match (w.first(), w.get(1)) {
                (Some(a), Some(b)) => matches!(
                    (d(a, b).ok(), d(b, a).ok()),
                    (Some(x), Some(y)) if x != y
                ),
                _ => false,
            },
            AxiomTag::M3 => match (w.first(), w.get(1), w.get(2)) {
                (Some(a), Some(b), Some(c)) => {
                    match (d(a, c).ok(), d(a, b).ok(), d(b, c).ok()) {
                        (Some(x), Some(y), Some(z)) => x > y + z,
                        _ => false,
                    }
                }
                _ => false,
            },
            AxiomTag::M4 => match (w.first(), w.get(1)) {
                (Some(a), Some(b)) => a != b && d(a, b).is_ok_and(|v| v.is_zero()),
                _ => false,
            },
            _ => false,
        }
    }
}

/// Evaluate one of the four metric formulas on exact rationals.
/// Requires 0 <= s12 <= min(s1, s2).
pub fn metric_value(
    kind: MetricKind,
    s1: &BigRational,
    s2: &BigRational,
    s12: &BigRational,
) -> Result<BigRational> {
    if s1.is_negative() || s2.is_negative() || s12.is_negative() {
        return Err(Error::ContractViolation(format!(
            "negative size among ({}, {}, {})",
            format_ratio(s1),
            format_ratio(s2),
            format_ratio(s12)
        )));
    }
    if s12 > s1.min(s2) {
        return Err(Error::ContractViolation(format!(
            "common size {} exceeds min({}, {})",
            format_ratio(s12),
            format_ratio(s1),
            format_ratio(s2)
        )));
    }
    let v = match kind {
        MetricKind::SymmetricDifference => &(s1 + s2) - &(s12 + s12),
        MetricKind::MaxMinusCommon => s1.max(s2) - s12,
        MetricKind::NormalizedMax => {
            if s1.is_zero() && s2.is_zero() {
                BigRational::zero()
            } else {
                ratio_int(1) - s12 / s1.max(s2)
            }
        }
        MetricKind::NormalizedUnion => {
            if s1.is_zero() && s2.is_zero() {
                BigRational::zero()
            } else {
                ratio_int(1) - s12 / (&(s1 + s2) - s12)
            }
        }
    };
    Ok(v)
}
