//! The edge bound e(d, m), its optimizing component profile, and the
//! extremal constructions.
//!
//! A graph reaching the bound decomposes into `t` claws `K_{1,d-1}` and
//! factor-critical components, a component with matching number `r` having
//! `2r + 1` vertices. With `j = ceil((d-1)/2)` the optimum uses
//! `floor((m-1)/j)` copies of a component `C` with `r = j`, and claws for the
//! remainder.

use serde::Serialize;

use crate::canon::canonical_form_without_isolated;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::nu;
use crate::star::is_factor_critical;
use crate::verify::{self, is_member_f, EXHAUSTIVE_VERTEX_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BoundParams {
    d: usize,
    m: usize,
}

impl BoundParams {
    pub fn new(d: usize, m: usize) -> Result<Self> {
        if d < 2 || m < 2 {
            return Err(Error::argument(format!("need d >= 2 and m >= 2, got d = {d}, m = {m}")));
        }
        Ok(BoundParams { d, m })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `ceil((d-1)/2)`, the matching number of the component `C`.
    pub fn j(&self) -> usize {
        self.d / 2
    }
}

/// Component counts of a decomposition: `t` claws, `j_size` components with
/// `r = ceil((d-1)/2)`, and factor-critical components with other `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PartitionProfile {
    pub t: usize,
    pub j_size: usize,
    pub r_list: Vec<usize>,
}

impl PartitionProfile {
    /// `t + j * |J| + sum(r_i)`, which must equal `m - 1`.
    pub fn matching_total(&self, d: usize) -> usize {
        self.t + (d / 2) * self.j_size + self.r_list.iter().sum::<usize>()
    }

    /// Largest edge count a graph with this profile can have.
    pub fn objective(&self, d: usize) -> usize {
        self.t * (d - 1)
            + self.j_size * component_edge_bound(d / 2, d)
            + self.r_list.iter().map(|&r| component_edge_bound(r, d)).sum::<usize>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    pub value: usize,
    pub profile: PartitionProfile,
}

pub fn trivial_bound(p: BoundParams) -> usize {
    2 * (p.m - 1) * (p.d - 1) - (p.m - 1)
}

/// Edge cap of a factor-critical component with matching number `r` and
/// maximum degree below `d`.
pub fn component_edge_bound(r: usize, d: usize) -> usize {
    ((2 * r + 1) * r).min((2 * r + 1) * (d - 1) / 2)
}

/// The bound in closed form.
pub fn unified_formula(p: BoundParams) -> usize {
    (p.d - 1) * (p.m - 1) + (p.m - 1) / p.j() * ((p.d - 1) / 2)
}

/// The bound as derived separately for odd `d = 2j + 1` and even `d = 2j`.
pub fn case_formula(p: BoundParams) -> usize {
    let j = p.j();
    let k = (p.m - 1) / j;
    if p.d % 2 == 1 {
        2 * j * (p.m - 1) + j * k
    } else {
        (2 * j - 1) * (p.m - 1) + (j - 1) * k
    }
}

pub fn e_bound(p: BoundParams) -> BoundResult {
    let value = unified_formula(p);
    assert_eq!(value, case_formula(p), "closed forms disagree at {p:?}");
    let profile = if p.d == 2 {
        // C has no edges here; every unit of matching is a K2 claw
        PartitionProfile {
            t: p.m - 1,
            j_size: 0,
            r_list: Vec::new(),
        }
    } else {
        let j_size = (p.m - 1) / p.j();
        PartitionProfile {
            t: p.m - 1 - p.j() * j_size,
            j_size,
            r_list: Vec::new(),
        }
    };
    debug_assert_eq!(profile.objective(p.d), value);
    BoundResult { value, profile }
}

/// `e(s, s)` from its own closed form.
pub fn e_ss(s: usize) -> Result<usize> {
    if s < 2 {
        return Err(Error::argument(format!("need s >= 2, got {s}")));
    }
    Ok(if s % 2 == 1 {
        s * (s - 1)
    } else {
        (2 * s - 1) * (s - 1) / 2
    })
}

/// Normalizes a profile so every factor-critical component has
/// `r = ceil((d-1)/2)`. Components with larger `r` shed one unit of matching
/// at a time into a new claw without changing the objective; components with
/// smaller positive `r` become `r` claws, which never lowers it. Components
/// with `r = j` are moved into `j_size` and zero entries are dropped.
pub fn reduction_rewrite(profile: &PartitionProfile, p: BoundParams) -> Result<PartitionProfile> {
    let d = p.d;
    let j = p.j();
    if profile.matching_total(d) != p.m - 1 {
        return Err(Error::precondition(format!(
            "profile accounts for matching number {}, expected {}",
            profile.matching_total(d),
            p.m - 1
        )));
    }
    let mut out = PartitionProfile {
        t: profile.t,
        j_size: profile.j_size,
        r_list: Vec::new(),
    };
    for &r in &profile.r_list {
        match r {
            0 => {}
            r if r > j => {
                out.t += r - j;
                out.j_size += 1;
            }
            r if r == j => out.j_size += 1,
            r => out.t += r,
        }
    }
    Ok(out)
}

/// `K_{1,d-1}` with the center at vertex 0.
pub fn construct_claw(d: usize) -> Result<Graph> {
    if d < 2 {
        return Err(Error::argument(format!("need d >= 2, got {d}")));
    }
    Ok(Graph::star(d - 1))
}

/// The factor-critical component with matching number `ceil((d-1)/2)` and
/// the most edges. For odd `d` it is `K_d`. For even `d = 2j` it is `K_{2j}`
/// minus the alternate edges of the cycle `0, 1, ..., 2j-1`, plus an apex
/// joined to the vertices `0..2j-1`, leaving vertex `2j-1` as the only one
/// of degree `d - 2`.
pub fn construct_c(d: usize) -> Result<Graph> {
    if d < 3 {
        return Err(Error::argument(format!("the component C needs d >= 3, got {d}")));
    }
    let j = d / 2;
    let g = if d % 2 == 1 {
        Graph::complete(d)
    } else {
        let mut g = Graph::new(2 * j + 1);
        for u in 0..2 * j {
            for v in u + 1..2 * j {
                if !(u % 2 == 0 && v == u + 1) {
                    g.insert(u, v);
                }
            }
        }
        for u in 0..2 * j - 1 {
            g.insert(u, 2 * j);
        }
        g
    };
    let n = 2 * j + 1;
    let ok = g.n() == n
        && g.edge_count() == n * (d - 1) / 2
        && g.max_degree() < d
        && is_factor_critical(&g)
        && nu(&g) == j
        && (d % 2 == 1 || g.degree_sequence().iter().filter(|&&x| x == d - 2).count() == 1);
    if !ok {
        return Err(Error::internal(format!("component C for d = {d} fails validation")));
    }
    Ok(g)
}

/// `t` claws followed by `|J|` copies of `C`, per [`e_bound`].
pub fn construct_extremal(p: BoundParams) -> Result<Graph> {
    let result = e_bound(p);
    let mut g = Graph::new(0);
    let claw = construct_claw(p.d)?;
    for _ in 0..result.profile.t {
        g = g.disjoint_union(&claw);
    }
    if result.profile.j_size > 0 {
        let c = construct_c(p.d)?;
        for _ in 0..result.profile.j_size {
            g = g.disjoint_union(&c);
        }
    }
    let ok = g.max_degree() < p.d
        && nu(&g) == p.m - 1
        && g.edge_count() == result.value
        && is_member_f(&g, p.d, p.m).is_member();
    if !ok {
        return Err(Error::internal(format!("extremal construction for {p:?} fails validation")));
    }
    Ok(g)
}

/// Whether the extremal graph is unique up to isomorphism and isolated
/// vertices.
pub fn is_extremal_unique(p: BoundParams) -> bool {
    p.d == 2 || (p.m == 2 && p.d != 4) || (p.m - 1).is_multiple_of(p.j())
}

/// The center of `component` if it spans a claw `K_{1,d-1}` in `g`.
/// For `d = 2` the claw is `K2` and the smaller endpoint is reported.
pub fn claw_center(g: &Graph, component: &[usize], d: usize) -> Option<usize> {
    if d < 2 || component.len() != d {
        return None;
    }
    let center = *component.iter().find(|&&v| g.neighbors(v).len() == d - 1)?;
    let leaves_ok = component
        .iter()
        .filter(|&&v| v != center)
        .all(|&v| g.neighbors(v) == [center]);
    leaves_ok.then_some(center)
}

/// Rewires two claw components into one tree: the edge from the first
/// center to its least leaf is dropped, and that center is joined to the
/// least leaf of the second claw. The edge count, `Δ < d` and `ν` are kept.
pub fn coalesce_claws(g: &Graph, c1: &[usize], c2: &[usize], d: usize) -> Result<Graph> {
    if d < 4 {
        // d = 2 would create a vertex of degree d; for d = 3 the result
        // is a path on five vertices, which is not edge-maximal
        return Err(Error::precondition(format!("coalescing claws needs d >= 4, got {d}")));
    }
    let (h1, h2) = match (claw_center(g, c1, d), claw_center(g, c2, d)) {
        (Some(a), Some(b)) if a != b => (a, b),
        _ => return Err(Error::precondition("both components must be distinct claws K_{1,d-1}")),
    };
    let dropped = g.neighbors(h1)[0];
    let target = g.neighbors(h2)[0];
    let mut out = g.clone();
    out.remove_edge(h1, dropped);
    out.insert(h1, target);
    if out.edge_count() != g.edge_count() || out.max_degree() >= d || nu(&out) != nu(g) {
        return Err(Error::internal("coalesced graph changed its invariants"));
    }
    Ok(out)
}

fn merged_is_valid(g: &Graph, d: usize, j: usize, target: usize) -> bool {
    g.n() == 2 * j + 3
        && g.edge_count() == target
        && g.max_degree() < d
        && is_factor_critical(g)
        && nu(g) == j + 1
}

/// Degree-capped backtracking over the pairs of `0..n` for a factor-critical
/// graph with exactly `target` edges.
fn search_merged(n: usize, d: usize, target: usize, j: usize) -> Option<Graph> {
    struct Search {
        pairs: Vec<(usize, usize)>,
        n: usize,
        d: usize,
        target: usize,
        j: usize,
    }
    impl Search {
        fn go(&self, p: usize, g: &mut Graph) -> bool {
            if g.edge_count() == self.target {
                return merged_is_valid(g, self.d, self.j, self.target);
            }
            if p == self.pairs.len() || g.edge_count() + (self.pairs.len() - p) < self.target {
                return false;
            }
            let (u, v) = self.pairs[p];
            if g.neighbors(u).len() + 1 < self.d && g.neighbors(v).len() + 1 < self.d {
                g.insert(u, v);
                if self.go(p + 1, g) {
                    return true;
                }
                g.remove_edge(u, v);
            }
            // the edge target forces every degree to be d - 1 or d - 2, and
            // (u, n - 1) is the last pair that can raise the degree of u
            if v + 1 == self.n && g.neighbors(u).len() + 2 < self.d {
                return false;
            }
            self.go(p + 1, g)
        }
    }
    let search = Search {
        pairs: (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        n,
        d,
        target,
        j,
    };
    let mut g = Graph::new(n);
    search.go(0, &mut g).then_some(g)
}

/// A factor-critical component on `2(j+1) + 1` vertices whose edge count is
/// that of one claw plus one `C`, which is `floor(n(d-1)/2)`. The circulant
/// on offsets `1..j` is tried first (for even `d` with a path on three
/// vertices and a matching of offset-one edges removed), then a search.
pub fn construct_merged_component(d: usize) -> Result<Graph> {
    if d < 3 {
        return Err(Error::argument(format!("the merged component needs d >= 3, got {d}")));
    }
    let j = d / 2;
    let n = 2 * j + 3;
    let target = (d - 1) + (2 * j + 1) * (d - 1) / 2;
    debug_assert_eq!(target, n * (d - 1) / 2);
    let mut g = Graph::new(n);
    for u in 0..n {
        for off in 1..=j {
            let v = (u + off) % n;
            if !g.has_edge(u, v) {
                g.insert(u, v);
            }
        }
    }
    if d.is_multiple_of(2) {
        g.remove_edge(0, 1);
        g.remove_edge(0, n - 1);
        for k in 1..=j {
            g.remove_edge(2 * k, 2 * k + 1);
        }
    }
    if merged_is_valid(&g, d, j, target) {
        return Ok(g);
    }
    if n > 9 {
        return Err(Error::internal(format!("no merged component found for d = {d}")));
    }
    search_merged(n, d, target, j)
        .ok_or_else(|| Error::internal(format!("no merged component exists for d = {d}")))
}

/// Number of isomorphism classes of isolated-vertex-free graphs with
/// `Δ < d`, `ν < m` and `e(d, m)` edges, by exhaustive search on `n_cap`
/// vertices.
pub fn count_extremal_variants(p: BoundParams, n_cap: usize) -> Result<usize> {
    let extremal = construct_extremal(p)?;
    let footprint = extremal.non_isolated_vertices().len();
    if footprint > n_cap || n_cap > EXHAUSTIVE_VERTEX_CAP {
        return Err(Error::Size(format!(
            "extremal graph for ({}, {}) has {footprint} vertices; search cap is {n_cap} (at most {EXHAUSTIVE_VERTEX_CAP})",
            p.d, p.m
        )));
    }
    let value = e_bound(p).value;
    let classes = verify::classes_with_at_least(p.d, p.m, n_cap, value)?;
    debug_assert!(classes.contains(&canonical_form_without_isolated(&extremal)?));
    Ok(classes.iter().filter(|c| c.to_graph().edge_count() == value).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;

    fn bp(d: usize, m: usize) -> BoundParams {
        BoundParams::new(d, m).unwrap()
    }

    #[test]
    fn trivial_bound_examples() {
        assert_eq!(trivial_bound(bp(2, 2)), 1);
        assert_eq!(trivial_bound(bp(3, 3)), 6);
        assert_eq!(trivial_bound(bp(4, 4)), 15);
    }

    #[test]
    fn component_bound_examples() {
        assert_eq!(component_edge_bound(1, 3), 3);
        assert_eq!(component_edge_bound(2, 4), 7);
        assert_eq!(component_edge_bound(0, 5), 0);
    }

    #[test]
    fn e_bound_examples() {
        assert_eq!(e_bound(bp(2, 2)).value, 1);
        assert_eq!(e_bound(bp(3, 3)).value, 6);
        let r = e_bound(bp(4, 4));
        assert_eq!(r.value, 10);
        assert_eq!((r.profile.t, r.profile.j_size), (1, 1));
        assert!(BoundParams::new(1, 3).is_err());
    }

    #[test]
    fn e_ss_examples() {
        assert_eq!(e_ss(3).unwrap(), 6);
        assert_eq!(e_ss(5).unwrap(), e_bound(bp(5, 5)).value);
        assert_eq!(e_ss(5).unwrap(), 20);
        assert_eq!(e_ss(4).unwrap(), 10);
    }

    #[test]
    fn reduction_examples() {
        let p = bp(5, 4);
        let big = PartitionProfile { t: 0, j_size: 0, r_list: vec![3] };
        let out = reduction_rewrite(&big, p).unwrap();
        assert_eq!(out, PartitionProfile { t: 1, j_size: 1, r_list: vec![] });
        assert_eq!(out.objective(5), big.objective(5));

        let p = bp(5, 3);
        let small = PartitionProfile { t: 0, j_size: 0, r_list: vec![1, 1] };
        let out = reduction_rewrite(&small, p).unwrap();
        assert_eq!(out.t, 2);
        assert!(out.objective(5) > small.objective(5));

        let reduced = e_bound(bp(4, 4)).profile;
        assert_eq!(reduction_rewrite(&reduced, bp(4, 4)).unwrap(), reduced);
        assert!(reduction_rewrite(&reduced, bp(4, 5)).is_err());
    }

    #[test]
    fn constructions() {
        for d in 2..7 {
            let claw = construct_claw(d).unwrap();
            assert_eq!((claw.n(), claw.edge_count(), nu(&claw), claw.max_degree()), (d, d - 1, 1, d - 1));
        }
        assert_eq!(construct_c(3).unwrap(), Graph::complete(3));
        let k5 = construct_c(5).unwrap();
        assert_eq!((k5.edge_count(), nu(&k5)), (10, 2));
        let c4 = construct_c(4).unwrap();
        assert_eq!((c4.n(), c4.edge_count()), (5, 7));
        let mut degs = c4.degree_sequence();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(degs, vec![3, 3, 3, 3, 2]);
        assert!(construct_c(2).is_err());
    }

    #[test]
    fn extremal_examples() {
        let g = construct_extremal(bp(3, 3)).unwrap();
        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert_eq!(canonical_form(&g).unwrap(), canonical_form(&two_k3).unwrap());
        assert_eq!(construct_extremal(bp(4, 4)).unwrap().edge_count(), 10);
        let g = construct_extremal(bp(2, 5)).unwrap();
        assert_eq!((g.edge_count(), g.n()), (4, 8));
    }

    #[test]
    fn uniqueness_predicate() {
        assert!(is_extremal_unique(bp(3, 3)));
        assert!(!is_extremal_unique(bp(4, 2)));
        assert!(!is_extremal_unique(bp(4, 4)));
        assert!(is_extremal_unique(bp(2, 7)));
        assert!(is_extremal_unique(bp(7, 2)));
    }

    #[test]
    fn coalescing() {
        let g = Graph::star(3).disjoint_union(&Graph::star(3));
        let comps = g.components();
        let out = coalesce_claws(&g, &comps.sets[0], &comps.sets[1], 4).unwrap();
        assert_eq!(out.edge_count(), 6);
        assert_eq!(out.non_isolated_vertices().len(), 7);
        assert!(is_member_f(&out, 4, 3).is_member());

        let k2s = Graph::complete(2).disjoint_union(&Graph::complete(2));
        let comps = k2s.components();
        assert!(coalesce_claws(&k2s, &comps.sets[0], &comps.sets[1], 2).is_err());
        let tri = Graph::complete(3).disjoint_union(&Graph::star(3));
        let comps = tri.components();
        assert!(coalesce_claws(&tri, &comps.sets[0], &comps.sets[1], 4).is_err());
    }

    #[test]
    fn merged_components() {
        let c5 = construct_merged_component(3).unwrap();
        assert_eq!((c5.n(), c5.edge_count()), (5, 5));
        let g = construct_merged_component(4).unwrap();
        assert_eq!((g.n(), g.edge_count(), nu(&g)), (7, 10, 3));
        let g = construct_merged_component(5).unwrap();
        assert_eq!((g.n(), g.edge_count()), (7, 14));
        assert!(g.degree_sequence().iter().all(|&x| x == 4));
    }

    #[test]
    fn variant_counts() {
        assert_eq!(count_extremal_variants(bp(3, 3), 6).unwrap(), 1);
        assert_eq!(count_extremal_variants(bp(4, 2), 4).unwrap(), 2);
        assert_eq!(count_extremal_variants(bp(2, 3), 4).unwrap(), 1);
        assert!(count_extremal_variants(bp(3, 3), 5).is_err());
    }
}
