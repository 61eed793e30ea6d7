//! Simple undirected graphs over dense vertex ids, matchings, and the
//! structural rewrites used by the transformation pipeline.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected edge stored as `(min, max)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Canonicalizes the endpoint order. Panics on a self-loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop {a}-{b}");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted, so iteration is in ascending id order and
/// membership is a binary search over at most `Δ` entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut g = Graph::new(n);
        for u in 0..n {
            g.insert(u, (u + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..n {
            g.insert(u - 1, u);
        }
        g
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::new(leaves + 1);
        for leaf in 1..=leaves {
            g.insert(0, leaf);
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.insert(i, (i + 1) % 5);
            g.insert(i, i + 5);
            g.insert(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::argument(format!(
                "vertex {v} out of range for graph on {} vertices",
                self.n()
            )))
        }
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    /// Sorted neighbor list. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Edges in ascending canonical order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| {
            ns.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| Edge { u, v })
        })
    }

    /// `V_0(G)`.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.adj[v].is_empty()).collect()
    }

    /// `V_{≥1}(G)`.
    pub fn non_isolated_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| !self.adj[v].is_empty()).collect()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::argument(format!("self-loop at vertex {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::argument(format!("duplicate edge {u}-{v}")));
        }
        self.insert(u, v);
        Ok(())
    }

    /// Inserts an edge known to be absent and loop-free.
    pub(crate) fn insert(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && !self.has_edge(u, v));
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.edge_count += 1;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        let pos = self.adj[u].binary_search(&v).unwrap();
        self.adj[u].remove(pos);
        let pos = self.adj[v].binary_search(&u).unwrap();
        self.adj[v].remove(pos);
        self.edge_count -= 1;
        true
    }

    /// Copy of `self` with `extra` isolated vertices appended.
    pub fn with_isolated(&self, extra: usize) -> Graph {
        let mut g = self.clone();
        g.adj.extend(std::iter::repeat_with(Vec::new).take(extra));
        g
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.n();
        let mut g = self.with_isolated(other.n());
        for e in other.edges() {
            g.insert(e.u + offset, e.v + offset);
        }
        g
    }

    /// True iff every edge of `self` is an edge of `host` (ids shared).
    pub fn is_subgraph_of(&self, host: &Graph) -> bool {
        self.n() <= host.n() && self.edges().all(|e| host.has_edge(e.u, e.v))
    }

    pub fn components(&self) -> ComponentPartition {
        let n = self.n();
        let mut component_of = vec![usize::MAX; n];
        let mut sets = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..n {
            if component_of[root] != usize::MAX {
                continue;
            }
            let id = sets.len();
            let mut members = vec![root];
            component_of[root] = id;
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if component_of[y] == usize::MAX {
                        component_of[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            sets.push(members);
        }
        ComponentPartition { sets, component_of }
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    /// Induced subgraph on `vertices`, relabeled densely in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Subgraph {
        let mut old_to_new = vec![None; self.n()];
        for (new, &old) in vertices.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let mut graph = Graph::new(vertices.len());
        for (new_u, &old_u) in vertices.iter().enumerate() {
            for &old_v in &self.adj[old_u] {
                if let Some(new_v) = old_to_new[old_v] {
                    if new_u < new_v {
                        graph.insert(new_u, new_v);
                    }
                }
            }
        }
        Subgraph {
            graph,
            new_to_old: vertices.to_vec(),
            old_to_new,
        }
    }

    /// `G \ v`: induced subgraph on the remaining vertices, ids re-densified.
    pub fn delete_vertex(&self, v: usize) -> Result<Subgraph> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n()).filter(|&x| x != v).collect();
        Ok(self.induced_subgraph(&keep))
    }

    /// `G ⊕ e_{vu}`: attach the isolated vertex `u` to `v`.
    pub fn oplus(&self, v: usize, u: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        self.check_vertex(u)?;
        if u == v {
            return Err(Error::precondition(format!("oplus: u = v = {u}")));
        }
        if self.has_edge(v, u) {
            return Err(Error::precondition(format!("oplus: edge {v}-{u} already present")));
        }
        if !self.adj[u].is_empty() {
            return Err(Error::precondition(format!("oplus: vertex {u} is not isolated")));
        }
        let mut g = self.clone();
        g.insert(v, u);
        Ok(g)
    }

    /// `G ⊖ E(v, H)`: drop every edge from `v` to a neighbor of `v` in `h`.
    /// The vertex set is unchanged.
    pub fn ominus(&self, v: usize, h: &Graph) -> Result<Graph> {
        self.check_vertex(v)?;
        if v >= h.n() {
            return Err(Error::precondition(format!("ominus: vertex {v} not in H")));
        }
        if !h.is_subgraph_of(self) {
            return Err(Error::precondition("ominus: H is not a subgraph of G"));
        }
        let mut g = self.clone();
        for &w in h.neighbors(v) {
            g.remove_edge(v, w);
        }
        Ok(g)
    }

    /// Checks the structural invariants: symmetry, no loops, sorted and
    /// duplicate-free adjacency, and the handshake identity.
    pub fn check_invariants(&self) -> bool {
        let mut degree_sum = 0;
        for (u, ns) in self.adj.iter().enumerate() {
            degree_sum += ns.len();
            if ns.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in ns {
                if v == u || v >= self.n() || self.adj[v].binary_search(&u).is_err() {
                    return false;
                }
            }
        }
        degree_sum == 2 * self.edge_count
    }
}

/// Induced subgraph together with the id maps to and from its host.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    pub new_to_old: Vec<usize>,
    pub old_to_new: Vec<Option<usize>>,
}

impl Subgraph {
    /// Restricts a host matching to the edges that survive in the subgraph.
    pub fn restrict(&self, m: &Matching) -> Matching {
        m.edges()
            .filter_map(|e| {
                let u = self.old_to_new.get(e.u).copied().flatten()?;
                let v = self.old_to_new.get(e.v).copied().flatten()?;
                Some(Edge::new(u, v))
            })
            .collect()
    }
}

/// Connected components: disjoint, sorted vertex sets covering `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub sets: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.sets.iter().map(Vec::as_slice)
    }
}

/// A set of edges; whether it is a matching of a given graph is checked by
/// [`crate::matching::is_matching`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matching {
    edges: BTreeSet<Edge>,
}

impl Matching {
    pub fn new() -> Self {
        Matching::default()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.edges.insert(e)
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        self.edges.remove(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn contains_pair(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&Edge::new(u, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    /// Saturated vertices.
    pub fn covered(&self) -> BTreeSet<usize> {
        self.edges.iter().flat_map(|e| [e.u, e.v]).collect()
    }

    pub fn covers(&self, v: usize) -> bool {
        self.edges.iter().any(|e| e.touches(v))
    }

    /// Partner array over `0..n`. Assumes the edges are vertex-disjoint.
    pub fn mates(&self, n: usize) -> Vec<Option<usize>> {
        let mut mate = vec![None; n];
        for e in &self.edges {
            if e.v < n {
                mate[e.u] = Some(e.v);
                mate[e.v] = Some(e.u);
            }
        }
        mate
    }

    pub fn from_mates(mate: &[Option<usize>]) -> Self {
        mate.iter()
            .enumerate()
            .filter_map(|(u, &w)| w.filter(|&w| u < w).map(|w| Edge::new(u, w)))
            .collect()
    }
}

impl FromIterator<Edge> for Matching {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        Matching {
            edges: iter.into_iter().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.degree(0).unwrap(), 2);
        assert_eq!(Graph::new(1).degree(0).unwrap(), 0);
        assert_eq!(Graph::star(3).degree(0).unwrap(), 3);
        assert!(matches!(k3.degree(3), Err(Error::Argument(_))));
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(Graph::star(3).max_degree(), 3);
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_k2.max_degree(), 1);
        assert_eq!(Graph::cycle(5).max_degree(), 2);
        assert_eq!(Graph::new(0).max_degree(), 0);
    }

    #[test]
    fn component_examples() {
        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let parts = two_k3.components();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|c| c.len() == 3));
        assert_eq!(Graph::path(4).components().len(), 1);
        let edgeless = Graph::new(3).components();
        assert_eq!(edgeless.sets, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn delete_vertex_examples() {
        let sub = Graph::complete(3).delete_vertex(1).unwrap();
        assert_eq!(sub.graph, Graph::complete(2));
        assert_eq!(sub.new_to_old, vec![0, 2]);
        assert_eq!(sub.old_to_new, vec![Some(0), None, Some(1)]);

        let leaves = Graph::star(3).delete_vertex(0).unwrap().graph;
        assert_eq!((leaves.n(), leaves.edge_count()), (3, 0));

        let p3 = Graph::path(3).delete_vertex(1).unwrap().graph;
        assert_eq!((p3.n(), p3.edge_count()), (2, 0));
        assert!(Graph::path(3).delete_vertex(3).is_err());
    }

    #[test]
    fn oplus_examples() {
        let g = Graph::complete(2).with_isolated(1);
        let p = g.oplus(0, 2).unwrap();
        assert_eq!(p.edge_count(), 2);
        assert_eq!(p.degree(0).unwrap(), 2);

        let claw = Graph::star(3).with_isolated(1).oplus(0, 4).unwrap();
        assert_eq!(claw, Graph::star(4));

        assert!(matches!(g.oplus(0, 1), Err(Error::Precondition(_))));
        let p3 = Graph::path(3);
        assert!(matches!(p3.oplus(0, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn repeated_oplus_builds_a_claw() {
        let d = 5;
        let mut g = Graph::complete(2).with_isolated(d - 1);
        for w in 2..d + 1 {
            g = g.oplus(0, w).unwrap();
        }
        let mut degrees = g.degree_sequence();
        degrees.sort_unstable();
        // vertex 0 gets the d-1 new leaves plus its old neighbor 1
        assert_eq!(degrees, vec![1, 1, 1, 1, 1, d]);
        assert_eq!(g.edge_count(), 1 + (d - 1));
    }

    #[test]
    fn ominus_examples() {
        let k3 = Graph::complete(3);
        let r = k3.ominus(0, &k3).unwrap();
        assert_eq!(r.n(), 3);
        assert_eq!(r.edges().collect::<Vec<_>>(), vec![Edge::new(1, 2)]);
        assert!(r.neighbors(0).is_empty());

        assert_eq!(k3.ominus(0, &Graph::new(3)).unwrap(), k3);

        let not_sub = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(matches!(not_sub.ominus(0, &k3), Err(Error::Precondition(_))));

        // claw center: strip all d-1 edges
        let claw = Graph::star(4);
        let stripped = claw.ominus(0, &claw).unwrap();
        assert_eq!(claw.edge_count() - stripped.edge_count(), 4);
    }

    #[test]
    fn invariants_hold_for_builders() {
        for g in [
            Graph::petersen(),
            Graph::complete(6),
            Graph::cycle(7),
            Graph::star(4).disjoint_union(&Graph::path(3)),
        ] {
            assert!(g.check_invariants());
        }
        assert_eq!(Graph::petersen().edge_count(), 15);
    }

    #[test]
    fn subgraph_restricts_matching() {
        let g = Graph::path(4);
        let m: Matching = [Edge::new(0, 1), Edge::new(2, 3)].into_iter().collect();
        let sub = g.delete_vertex(0).unwrap();
        let r = sub.restrict(&m);
        assert_eq!(r.edges().collect::<Vec<_>>(), vec![Edge::new(1, 2)]);
    }
}
