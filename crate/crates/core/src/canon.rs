//! Exhaustive graph canonicalization. Two graphs get equal canonical
//! byte strings if and only if they are isomorphic; the form doubles as
//! the identity of a graph when graphs-up-to-isomorphism are treated as
//! equal and when deduplicating solver witnesses.
//!
//! The search orders vertices class-by-class (classes come from an
//! isomorphism-invariant key: label, degree, and the sorted multiset of
//! incident edge/neighbor labels) and minimizes the resulting adjacency
//! encoding lexicographically, pruning against the best encoding found
//! so far. Correct for any labeled simple graph; exponential in the
//! worst case, hence the vertex cap.

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

pub const DEFAULT_CANON_VERTEX_CAP: usize = 10;

/// Byte separator after each label; 0xFF never occurs in UTF-8.
const SEP: u8 = 0xFF;
const EDGE_ABSENT: u8 = 0x00;
const EDGE_PRESENT: u8 = 0x01;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn canonical_form(g: &LabeledGraph) -> Result<CanonicalForm> {
    canonical_form_with_cap(g, DEFAULT_CANON_VERTEX_CAP)
}

pub fn canonical_form_with_cap(g: &LabeledGraph, cap: usize) -> Result<CanonicalForm> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::cap("canonical-form vertices", cap, n));
    }
    if n == 0 {
        return Ok(CanonicalForm(vec![0]));
    }

    let keys: Vec<Vec<u8>> = (0..n).map(|v| invariant_key(g, v)).collect();
    let mut by_key: Vec<usize> = (0..n).collect();
    by_key.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
    // key required at each position of the canonical ordering
    let slot_key: Vec<&Vec<u8>> = by_key.iter().map(|&v| &keys[v]).collect();

    let mut search = Search {
        g,
        keys: &keys,
        slot_key: &slot_key,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        buf: vec![n as u8],
        best: None,
    };
    search.place();
    Ok(CanonicalForm(search.best.expect("at least one ordering")))
}

struct Search<'a> {
    g: &'a LabeledGraph,
    keys: &'a [Vec<u8>],
    slot_key: &'a [&'a Vec<u8>],
    perm: Vec<usize>,
    used: Vec<bool>,
    buf: Vec<u8>,
    best: Option<Vec<u8>>,
}

impl Search<'_> {
    fn place(&mut self) {
        let p = self.perm.len();
        let n = self.used.len();
        if p == n {
            let better = match &self.best {
                None => true,
                Some(b) => self.buf < *b,
            };
            if better {
                self.best = Some(self.buf.clone());
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.keys[v] != *self.slot_key[p] {
                continue;
            }
            let mark = self.buf.len();
            self.buf.extend_from_slice(self.g.vertex_label_at(v).as_bytes());
            self.buf.push(SEP);
            for q in 0..p {
                match self.g.edge_label_idx(v, self.perm[q]) {
                    None => self.buf.push(EDGE_ABSENT),
                    Some(l) => {
                        self.buf.push(EDGE_PRESENT);
                        self.buf.extend_from_slice(l.as_bytes());
                        self.buf.push(SEP);
                    }
                }
            }
            // prune orderings that can no longer beat the best encoding
            let viable = match &self.best {
                None => true,
                Some(b) => {
                    let end = self.buf.len().min(b.len());
                    self.buf[..end] <= b[..end]
                }
            };
            if viable {
                self.perm.push(v);
                self.used[v] = true;
                self.place();
                self.used[v] = false;
                self.perm.pop();
            }
            self.buf.truncate(mark);
        }
    }
}

fn invariant_key(g: &LabeledGraph, v: usize) -> Vec<u8> {
    let mut key = Vec::new();
    key.extend_from_slice(g.vertex_label_at(v).as_bytes());
    key.push(SEP);
    key.push(g.degree(v) as u8);
    let mut incident: Vec<Vec<u8>> = (0..g.vertex_count())
        .filter_map(|w| {
            g.edge_label_idx(v, w).map(|el| {
                let mut item = Vec::new();
                item.extend_from_slice(el.as_bytes());
                item.push(SEP);
                item.extend_from_slice(g.vertex_label_at(w).as_bytes());
                item.push(SEP);
                item
            })
        })
        .collect();
    incident.sort();
    for item in incident {
        key.extend_from_slice(&item);
    }
    key
}
