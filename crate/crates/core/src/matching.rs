//! Exact maximum matching (Edmonds' blossom search), augmenting paths, and an
//! independent branch-and-bound oracle.
//!
//! Throughout the crate "maximum" means largest cardinality. Several of the
//! structural statements this code checks are usually phrased with the word
//! "maximal", but every one of them needs a maximum matching.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Matching};

/// Default edge cap for [`brute_force_maximum_matching`].
pub const BRUTE_FORCE_EDGE_CAP: usize = 24;

/// A simple path whose consecutive edges alternate between non-matching and
/// matching with respect to some matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingPath {
    vertices: Vec<usize>,
    in_matching: Vec<bool>,
}

impl AlternatingPath {
    pub fn new(g: &Graph, m: &Matching, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::precondition("path has no vertices"));
        }
        let mut seen = vec![false; g.n()];
        for &v in &vertices {
            if v >= g.n() {
                return Err(Error::argument(format!("vertex {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::precondition(format!("vertex {v} repeats; not a path")));
            }
        }
        let mut in_matching = Vec::with_capacity(vertices.len() - 1);
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::precondition(format!("{}-{} is not an edge", w[0], w[1])));
            }
            in_matching.push(m.contains_pair(w[0], w[1]));
        }
        if in_matching.windows(2).any(|f| f[0] == f[1]) {
            return Err(Error::precondition("edge flags do not alternate"));
        }
        Ok(AlternatingPath {
            vertices,
            in_matching,
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn in_matching(&self) -> &[bool] {
        &self.in_matching
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.in_matching.len()
    }

    pub fn is_empty(&self) -> bool {
        self.in_matching.is_empty()
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| Edge::new(w[0], w[1]))
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut in_matching = self.in_matching.clone();
        in_matching.reverse();
        AlternatingPath {
            vertices,
            in_matching,
        }
    }

    /// The walk `self ★ other`; `None` unless `self` ends where `other` starts.
    pub fn concat(&self, other: &AlternatingPath) -> Option<Vec<usize>> {
        if self.end() != other.start() {
            return None;
        }
        let mut walk = self.vertices.clone();
        walk.extend_from_slice(&other.vertices[1..]);
        Some(walk)
    }
}

/// Odd alternating path between two unsaturated vertices whose first and
/// last edges are non-matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentingPath(AlternatingPath);

impl AugmentingPath {
    pub fn new(g: &Graph, m: &Matching, vertices: Vec<usize>) -> Result<Self> {
        let path = AlternatingPath::new(g, m, vertices)?;
        if path.len() % 2 == 0 {
            return Err(Error::precondition("augmenting path must have odd length"));
        }
        if path.in_matching[0] {
            return Err(Error::precondition("augmenting path starts with a matching edge"));
        }
        if m.covers(path.start()) || m.covers(path.end()) {
            return Err(Error::precondition("augmenting path endpoint is saturated"));
        }
        Ok(AugmentingPath(path))
    }

    pub fn path(&self) -> &AlternatingPath {
        &self.0
    }

    pub fn vertices(&self) -> &[usize] {
        self.0.vertices()
    }
}

pub fn is_matching(g: &Graph, m: &Matching) -> bool {
    let mut used = vec![false; g.n()];
    for e in m.edges() {
        if !g.has_edge(e.u, e.v) || used[e.u] || used[e.v] {
            return false;
        }
        used[e.u] = true;
        used[e.v] = true;
    }
    true
}

const NONE: usize = usize::MAX;

/// Alternating-forest search with blossom contraction, rooted at one free
/// vertex. Vertices and neighbors are scanned in ascending id order.
struct BlossomSearch<'a> {
    g: &'a Graph,
    mate: &'a [usize],
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> BlossomSearch<'a> {
    fn new(g: &'a Graph, mate: &'a [usize]) -> Self {
        let n = g.n();
        BlossomSearch {
            g,
            mate,
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lowest_common_base(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Returns the augmenting path from `root` as a vertex list, if any.
    fn run(mut self, root: usize) -> Option<Vec<usize>> {
        let n = self.g.n();
        let mut queue = VecDeque::new();
        self.used[root] = true;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let b = self.lowest_common_base(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, b, to);
                    self.mark_path(to, b, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = b;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(self.trace(to));
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        None
    }

    fn trace(&self, end: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut v = end;
        while v != NONE {
            let pv = self.parent[v];
            path.push(v);
            path.push(pv);
            v = self.mate[pv];
        }
        path.reverse();
        path
    }
}

fn mate_array(g: &Graph, m: &Matching) -> Vec<usize> {
    m.mates(g.n())
        .into_iter()
        .map(|x| x.unwrap_or(NONE))
        .collect()
}

fn flip(mate: &mut [usize], path: &[usize]) {
    for pair in path.chunks(2) {
        mate[pair[0]] = pair[1];
        mate[pair[1]] = pair[0];
    }
}

/// Some augmenting path for `m`, or `None` iff `m` is maximum (Berge).
pub fn find_augmenting_path(g: &Graph, m: &Matching) -> Result<Option<AugmentingPath>> {
    if !is_matching(g, m) {
        return Err(Error::precondition("not a matching of the graph"));
    }
    let mate = mate_array(g, m);
    for root in 0..g.n() {
        if mate[root] != NONE || g.neighbors(root).is_empty() {
            continue;
        }
        if let Some(path) = BlossomSearch::new(g, &mate).run(root) {
            let p = AugmentingPath::new(g, m, path)
                .map_err(|e| Error::internal(format!("blossom search produced a bad path: {e}")))?;
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Symmetric difference of `m` with the edges of `p`.
pub fn augment(g: &Graph, m: &Matching, p: &AugmentingPath) -> Result<Matching> {
    // Re-validate against this matching; `p` may have been built for another.
    let checked = AugmentingPath::new(g, m, p.vertices().to_vec())?;
    let mut out = m.clone();
    for (e, &matched) in checked.path().edges().zip(checked.path().in_matching()) {
        if matched {
            out.remove(&e);
        } else {
            out.insert(e);
        }
    }
    Ok(out)
}

fn greedy_mates(g: &Graph) -> Vec<usize> {
    let mut mate = vec![NONE; g.n()];
    for u in 0..g.n() {
        if mate[u] != NONE {
            continue;
        }
        if let Some(&w) = g.neighbors(u).iter().find(|&&w| mate[w] == NONE) {
            mate[u] = w;
            mate[w] = u;
        }
    }
    mate
}

fn augment_from_every_root(g: &Graph, mut mate: Vec<usize>) -> Matching {
    for root in 0..g.n() {
        if mate[root] != NONE || g.neighbors(root).is_empty() {
            continue;
        }
        if let Some(path) = BlossomSearch::new(g, &mate).run(root) {
            flip(&mut mate, &path);
        }
    }
    let mates: Vec<Option<usize>> = mate.iter().map(|&x| (x != NONE).then_some(x)).collect();
    Matching::from_mates(&mates)
}

/// Maximum-cardinality matching. Starts from the greedy maximal matching and
/// augments once per free root; a root with no augmenting path never gains
/// one later, so a single pass is exact.
pub fn maximum_matching(g: &Graph) -> Matching {
    augment_from_every_root(g, greedy_mates(g))
}

/// Grows an arbitrary matching of `g` into a maximum one.
pub fn extend_to_maximum(g: &Graph, m: &Matching) -> Result<Matching> {
    if !is_matching(g, m) {
        return Err(Error::precondition("not a matching of the graph"));
    }
    Ok(augment_from_every_root(g, mate_array(g, m)))
}

/// ν(G).
pub fn nu(g: &Graph) -> usize {
    maximum_matching(g).len()
}

pub fn is_maximum(g: &Graph, m: &Matching) -> bool {
    is_matching(g, m) && m.len() == nu(g)
}

pub fn brute_force_maximum_matching(g: &Graph) -> Result<Matching> {
    brute_force_maximum_matching_with_cap(g, BRUTE_FORCE_EDGE_CAP)
}

/// Exact maximum matching by branch and bound on the lowest undecided
/// vertex: leave it exposed, or match it to each undecided neighbor.
pub fn brute_force_maximum_matching_with_cap(g: &Graph, edge_cap: usize) -> Result<Matching> {
    if g.edge_count() > edge_cap {
        return Err(Error::Size(format!(
            "brute-force matching limited to {edge_cap} edges, graph has {}",
            g.edge_count()
        )));
    }
    struct Search<'a> {
        g: &'a Graph,
        decided: Vec<bool>,
        current: Vec<Edge>,
        best: Vec<Edge>,
    }
    impl Search<'_> {
        fn go(&mut self, from: usize, open: usize) {
            if self.current.len() + open / 2 <= self.best.len() {
                return;
            }
            let Some(v) = (from..self.g.n()).find(|&v| !self.decided[v]) else {
                self.best = self.current.clone();
                return;
            };
            self.decided[v] = true;
            for &w in self.g.neighbors(v) {
                if self.decided[w] {
                    continue;
                }
                self.decided[w] = true;
                self.current.push(Edge::new(v, w));
                self.go(v + 1, open - 2);
                self.current.pop();
                self.decided[w] = false;
            }
            self.go(v + 1, open - 1);
            self.decided[v] = false;
        }
    }
    // Isolated vertices can never be matched.
    let decided: Vec<bool> = (0..g.n()).map(|v| g.neighbors(v).is_empty()).collect();
    let open = decided.iter().filter(|&&d| !d).count();
    let mut search = Search {
        g,
        decided,
        current: Vec::new(),
        best: Vec::new(),
    };
    search.go(0, open);
    Ok(search.best.into_iter().collect())
}
