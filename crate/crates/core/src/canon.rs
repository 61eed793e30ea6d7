//! Canonical forms for small graphs, used to count isomorphism classes.
//!
//! Vertices are first colored by iterated neighborhood refinement (a color is
//! an isomorphism invariant). The canonical form is then the lexicographically
//! smallest column-wise adjacency code over all labelings that list the
//! color classes in order. The permutation search prunes code prefixes that
//! are already larger than the best one and skips interchangeable twins.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const CANON_VERTEX_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Rebuilds the canonical representative.
    pub fn to_graph(&self) -> Graph {
        let n = self.0[0] as usize;
        let bits = &self.0[1..];
        let mut g = Graph::new(n);
        let mut k = 0;
        for v in 1..n {
            for u in 0..v {
                if bits[k / 8] >> (k % 8) & 1 == 1 {
                    g.insert(u, v);
                }
                k += 1;
            }
        }
        g
    }
}

fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors: Vec<usize> = (0..n).map(|v| g.neighbors(v).len()).collect();
    let mut classes = usize::MAX;
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut ranks = BTreeMap::new();
        for s in &signatures {
            ranks.entry(s.clone()).or_insert(0);
        }
        for (rank, slot) in ranks.values_mut().enumerate() {
            *slot = rank;
        }
        colors = signatures.iter().map(|s| ranks[s]).collect();
        if ranks.len() == classes {
            return colors;
        }
        classes = ranks.len();
    }
}

struct Search<'a> {
    adj: Vec<u16>,
    colors: &'a [usize],
    slot_color: Vec<usize>,
    order: Vec<usize>,
    used: u16,
    code: Vec<bool>,
    best: Option<Vec<bool>>,
}

impl Search<'_> {
    fn twins(&self, a: usize, b: usize) -> bool {
        let strip = !((1u16 << a) | (1u16 << b));
        self.adj[a] & strip == self.adj[b] & strip
    }

    fn prefix_exceeds_best(&self) -> bool {
        self.best
            .as_ref()
            .is_some_and(|best| self.code.as_slice() > &best[..self.code.len()])
    }

    fn place(&mut self, pos: usize) {
        let n = self.adj.len();
        if pos == n {
            if self.best.as_ref().is_none_or(|best| self.code < *best) {
                self.best = Some(self.code.clone());
            }
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..n {
            if self.used >> v & 1 == 1 || self.colors[v] != self.slot_color[pos] {
                continue;
            }
            if tried.iter().any(|&t| self.twins(t, v)) {
                continue;
            }
            tried.push(v);
            let start = self.code.len();
            for q in 0..pos {
                let bit = self.adj[self.order[q]] >> v & 1 == 1;
                self.code.push(bit);
            }
            if !self.prefix_exceeds_best() {
                self.order.push(v);
                self.used |= 1 << v;
                self.place(pos + 1);
                self.used &= !(1 << v);
                self.order.pop();
            }
            self.code.truncate(start);
        }
    }
}

/// Byte string identical for two graphs iff they are isomorphic.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let n = g.n();
    if n > CANON_VERTEX_CAP {
        return Err(Error::Size(format!(
            "canonical form limited to {CANON_VERTEX_CAP} vertices, graph has {n}"
        )));
    }
    let colors = refine_colors(g);
    let mut slot_color = colors.clone();
    slot_color.sort_unstable();
    let adj: Vec<u16> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u16, |acc, &w| acc | 1 << w))
        .collect();
    let mut search = Search {
        adj,
        colors: &colors,
        slot_color,
        order: Vec::with_capacity(n),
        used: 0,
        code: Vec::new(),
        best: None,
    };
    search.place(0);
    let bits = search.best.unwrap_or_default();
    let mut bytes = vec![n as u8];
    bytes.extend(vec![0u8; bits.len().div_ceil(8)]);
    for (k, &bit) in bits.iter().enumerate() {
        if bit {
            bytes[1 + k / 8] |= 1 << (k % 8);
        }
    }
    Ok(CanonicalForm(bytes))
}

/// Same as [`canonical_form`] after dropping isolated vertices.
pub fn canonical_form_without_isolated(g: &Graph) -> Result<CanonicalForm> {
    let keep = g.non_isolated_vertices();
    canonical_form(&g.induced_subgraph(&keep).graph)
}
