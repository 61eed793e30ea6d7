//! Star paths and star vertices.
//!
//! A star path relative to a matching `M` is an even-length alternating path
//! that begins at an `M`-unsaturated vertex, so its first edge is a
//! non-matching edge and its last edge (if any) is a matching edge. A vertex
//! is a star vertex when some star path ends there. Unsaturation is always
//! taken relative to the matching passed in, whether or not it is maximum.
//!
//! For a maximum matching the star vertices are exactly the vertices whose
//! deletion leaves the matching number unchanged, which is what links this
//! module to factor-critical graphs.

use crate::error::{Error, Result};
use crate::graph::{Graph, Matching};
use crate::matching::{is_matching, maximum_matching, nu, AlternatingPath, AugmentingPath};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarPath(AlternatingPath);

impl StarPath {
    pub fn new(g: &Graph, m: &Matching, vertices: Vec<usize>) -> Result<Self> {
        let path = AlternatingPath::new(g, m, vertices)?;
        if path.len() % 2 != 0 {
            return Err(Error::precondition("star path must have even length"));
        }
        if m.covers(path.start()) {
            return Err(Error::precondition(format!(
                "star path starts at saturated vertex {}",
                path.start()
            )));
        }
        // An unsaturated start forces the first edge to be non-matching, and
        // alternation plus even length forces the last one into M.
        Ok(StarPath(path))
    }

    pub fn path(&self) -> &AlternatingPath {
        &self.0
    }

    pub fn vertices(&self) -> &[usize] {
        self.0.vertices()
    }

    pub fn start(&self) -> usize {
        self.0.start()
    }

    pub fn end(&self) -> usize {
        self.0.end()
    }
}

/// `Star(G, M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarSet {
    members: Vec<bool>,
}

impl StarSet {
    pub fn contains(&self, v: usize) -> bool {
        self.members.get(v).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&v| self.members[v]).collect()
    }

    /// Vertices of the host graph that are not star vertices.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&v| !self.members[v]).collect()
    }

    pub fn covers_all(&self) -> bool {
        self.members.iter().all(|&b| b)
    }
}

/// Depth-first enumeration of every star path, in ascending order of start
/// vertex and then of neighbor id. The visitor returns `true` to stop.
struct StarWalker<'a> {
    g: &'a Graph,
    mate: Vec<Option<usize>>,
    on_path: Vec<bool>,
    path: Vec<usize>,
}

impl<'a> StarWalker<'a> {
    fn new(g: &'a Graph, m: &Matching) -> Self {
        StarWalker {
            g,
            mate: m.mates(g.n()),
            on_path: vec![false; g.n()],
            path: Vec::new(),
        }
    }

    fn walk(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        for root in 0..self.g.n() {
            if self.mate[root].is_some() {
                continue;
            }
            self.path.push(root);
            self.on_path[root] = true;
            let stop = self.extend(visit);
            self.on_path[root] = false;
            self.path.pop();
            if stop {
                return true;
            }
        }
        false
    }

    fn extend(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if visit(&self.path) {
            return true;
        }
        let x = *self.path.last().unwrap();
        for &y in self.g.neighbors(x) {
            if self.on_path[y] || self.mate[x] == Some(y) {
                continue;
            }
            // y unsaturated would close an augmenting path, not a star path
            let Some(z) = self.mate[y] else { continue };
            if self.on_path[z] {
                continue;
            }
            self.path.extend([y, z]);
            self.on_path[y] = true;
            self.on_path[z] = true;
            let stop = self.extend(visit);
            self.on_path[y] = false;
            self.on_path[z] = false;
            self.path.truncate(self.path.len() - 2);
            if stop {
                return true;
            }
        }
        false
    }
}

/// Reference computation of `Star(G, M)` by exhaustive search over simple
/// alternating paths. Exponential in the worst case; intended for small and
/// bounded-degree inputs.
pub fn star_set(g: &Graph, m: &Matching) -> Result<StarSet> {
    if !is_matching(g, m) {
        return Err(Error::precondition("not a matching of the graph"));
    }
    let mut members = vec![false; g.n()];
    StarWalker::new(g, m).walk(&mut |path| {
        members[*path.last().unwrap()] = true;
        false
    });
    Ok(StarSet { members })
}

/// First star path (in search order) that ends at `target`.
pub fn find_star_path(g: &Graph, m: &Matching, target: usize) -> Result<Option<StarPath>> {
    g.degree(target)?;
    if !is_matching(g, m) {
        return Err(Error::precondition("not a matching of the graph"));
    }
    let mut found = None;
    StarWalker::new(g, m).walk(&mut |path| {
        if *path.last().unwrap() == target {
            found = Some(path.to_vec());
            true
        } else {
            false
        }
    });
    found.map(|p| StarPath::new(g, m, p)).transpose()
}

/// Every star path of `(g, m)`. Intended for test harnesses on small graphs.
pub fn all_star_paths(g: &Graph, m: &Matching) -> Result<Vec<StarPath>> {
    if !is_matching(g, m) {
        return Err(Error::precondition("not a matching of the graph"));
    }
    let mut paths = Vec::new();
    StarWalker::new(g, m).walk(&mut |path| {
        paths.push(path.to_vec());
        false
    });
    paths.into_iter().map(|p| StarPath::new(g, m, p)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MergeOutcome {
    /// A star path from the start of the first path to the end of the second.
    StarPath(StarPath),
    /// An augmenting path between the two start vertices.
    Augmenting(AugmentingPath),
}

/// Combines two intersecting star paths `P1 = (x_1..x_n)` and
/// `P2 = (y_1..y_m)` into either a star path from `x_1` to `y_m` or an
/// augmenting path from `x_1` to `y_1`.
///
/// Let `x_i = y_j` be the first vertex of `P1` that lies on `P2`. If `i = 1`
/// then `x_1 = y_1` and `P2` itself is the answer. If `j = m`, the prefix of
/// `P1` followed by `P2` reversed augments. Otherwise the edge entering `x_i`
/// along `P1` is non-matching, so the matching edge at `y_j` points either
/// back along `P2` (giving an augmenting path to `y_1`) or forward (giving a
/// star path to `y_m`).
pub fn merge_star_paths(
    g: &Graph,
    m: &Matching,
    p1: &StarPath,
    p2: &StarPath,
) -> Result<MergeOutcome> {
    let p1 = StarPath::new(g, m, p1.vertices().to_vec())?;
    let p2 = StarPath::new(g, m, p2.vertices().to_vec())?;
    let xs = p1.vertices();
    let ys = p2.vertices();

    let Some((i, j)) = xs
        .iter()
        .enumerate()
        .find_map(|(i, x)| ys.iter().position(|y| y == x).map(|j| (i, j)))
    else {
        return Err(Error::precondition("star paths do not intersect"));
    };

    let outcome = if i == 0 {
        if j != 0 {
            return Err(Error::internal(
                "unsaturated start of P1 lies on P2 away from its start",
            ));
        }
        MergeOutcome::StarPath(p2.clone())
    } else if j == ys.len() - 1 || m.contains_pair(ys[j - 1], ys[j]) {
        let mut walk = xs[..=i].to_vec();
        walk.extend(ys[..j].iter().rev());
        MergeOutcome::Augmenting(AugmentingPath::new(g, m, walk)?)
    } else if m.contains_pair(ys[j], ys[j + 1]) {
        let mut walk = xs[..=i].to_vec();
        walk.extend(&ys[j + 1..]);
        MergeOutcome::StarPath(StarPath::new(g, m, walk)?)
    } else {
        return Err(Error::internal(format!(
            "interior vertex {} of a star path has no incident matching edge on it",
            ys[j]
        )));
    };
    Ok(outcome)
}

/// The unique unsaturated vertex of a component made of star vertices under
/// a maximum matching.
pub fn all_star_component_witness(g: &Graph, m: &Matching, component: &[usize]) -> Result<usize> {
    if !is_matching(g, m) || m.len() != nu(g) {
        return Err(Error::precondition("matching is not maximum"));
    }
    let stars = star_set(g, m)?;
    if let Some(&v) = component.iter().find(|&&v| !stars.contains(v)) {
        return Err(Error::precondition(format!("vertex {v} is not a star vertex")));
    }
    let covered = m.covered();
    let exposed: Vec<usize> = component
        .iter()
        .copied()
        .filter(|v| !covered.contains(v))
        .collect();
    match exposed.as_slice() {
        [v] => Ok(*v),
        _ => Err(Error::internal(format!(
            "all-star component has {} unsaturated vertices",
            exposed.len()
        ))),
    }
}

/// Vertices `v` with `ν(G \ v) = ν(G)`.
pub fn avoidable_vertices(g: &Graph) -> Vec<bool> {
    let base = nu(g);
    (0..g.n())
        .map(|v| nu(&g.delete_vertex(v).expect("in range").graph) == base)
        .collect()
}

/// Connected and every single-vertex deletion preserves ν.
pub fn is_factor_critical(g: &Graph) -> bool {
    g.is_connected() && avoidable_vertices(g).into_iter().all(|b| b)
}

/// Connected and every vertex is a star vertex for one maximum matching.
pub fn is_factor_critical_via_star(g: &Graph) -> bool {
    if !g.is_connected() {
        return false;
    }
    let m = maximum_matching(g);
    star_set(g, &m).expect("maximum matching is valid").covers_all()
}

/// `|V(G)| = 2ν(G) + 1` for a factor-critical graph. Failure is an internal
/// error: the identity always holds.
pub fn gallai_check(g: &Graph) -> Result<bool> {
    if !is_factor_critical(g) {
        return Err(Error::precondition("graph is not factor-critical"));
    }
    let value = nu(g);
    if g.n() != 2 * value + 1 {
        return Err(Error::internal(format!(
            "factor-critical graph on {} vertices has matching number {value}",
            g.n()
        )));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn m(edges: &[(usize, usize)]) -> Matching {
        edges.iter().map(|&(u, v)| Edge::new(u, v)).collect()
    }

    // P3 a-b-c as 0-1-2 with M = {ab}
    fn p3_case() -> (Graph, Matching) {
        (Graph::path(3), m(&[(0, 1)]))
    }

    #[test]
    fn star_set_examples() {
        let (g, mm) = p3_case();
        assert_eq!(star_set(&g, &mm).unwrap().vertices(), vec![0, 2]);

        let k3 = Graph::complete(3);
        assert_eq!(star_set(&k3, &m(&[(0, 1)])).unwrap().vertices(), vec![0, 1, 2]);

        let k2 = Graph::complete(2);
        assert!(star_set(&k2, &m(&[(0, 1)])).unwrap().is_empty());

        assert!(star_set(&k3, &m(&[(0, 1), (1, 2)])).is_err());
    }

    #[test]
    fn find_star_path_examples() {
        let (g, mm) = p3_case();
        let p = find_star_path(&g, &mm, 0).unwrap().unwrap();
        assert_eq!(p.vertices(), &[2, 1, 0]);
        assert!(find_star_path(&g, &mm, 1).unwrap().is_none());
        let trivial = find_star_path(&g, &mm, 2).unwrap().unwrap();
        assert_eq!(trivial.vertices(), &[2]);
        assert!(find_star_path(&g, &mm, 7).is_err());
    }

    #[test]
    fn star_path_validation() {
        let (g, mm) = p3_case();
        assert!(StarPath::new(&g, &mm, vec![0]).is_err());
        assert!(StarPath::new(&g, &mm, vec![2, 1]).is_err());
        assert!(StarPath::new(&g, &mm, vec![2, 1, 0]).is_ok());
    }

    #[test]
    fn merge_base_cases() {
        let (g, mm) = p3_case();
        let long = StarPath::new(&g, &mm, vec![2, 1, 0]).unwrap();
        let short = StarPath::new(&g, &mm, vec![2]).unwrap();

        assert_eq!(
            merge_star_paths(&g, &mm, &long, &long).unwrap(),
            MergeOutcome::StarPath(long.clone())
        );
        assert_eq!(
            merge_star_paths(&g, &mm, &short, &long).unwrap(),
            MergeOutcome::StarPath(long.clone())
        );
    }

    #[test]
    fn merge_case_one_yields_augmenting_path() {
        // P2 = (0,1,2,3,4) with M = {12,34}; P1 = (5,2,1) enters at y_3 = 2
        // whose matching edge points back along P2.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 2)]).unwrap();
        let mm = m(&[(1, 2), (3, 4)]);
        let p2 = StarPath::new(&g, &mm, vec![0, 1, 2, 3, 4]).unwrap();
        let p1 = StarPath::new(&g, &mm, vec![5, 2, 1]).unwrap();
        match merge_star_paths(&g, &mm, &p1, &p2).unwrap() {
            MergeOutcome::StarPath(p) => panic!("expected augmenting, got {p:?}"),
            MergeOutcome::Augmenting(p) => assert_eq!(p.vertices(), &[5, 2, 1, 0]),
        }
    }

    #[test]
    fn merge_at_the_end_of_p2_yields_augmenting_path() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 4)]).unwrap();
        let mm = m(&[(1, 2), (3, 4)]);
        let p2 = StarPath::new(&g, &mm, vec![0, 1, 2, 3, 4]).unwrap();
        let p1 = StarPath::new(&g, &mm, vec![5, 4, 3]).unwrap();
        match merge_star_paths(&g, &mm, &p1, &p2).unwrap() {
            MergeOutcome::StarPath(p) => panic!("expected augmenting, got {p:?}"),
            MergeOutcome::Augmenting(p) => assert_eq!(p.vertices(), &[5, 4, 3, 2, 1, 0]),
        }
    }

    #[test]
    fn merge_case_two_yields_star_path() {
        // P2 = (0,1,2,3,4) with M = {12,34}; P1 = (5,1,2) enters at y_2 = 1
        // whose matching edge points forward.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 1)]).unwrap();
        let mm = m(&[(1, 2), (3, 4)]);
        let p2 = StarPath::new(&g, &mm, vec![0, 1, 2, 3, 4]).unwrap();
        let p1 = StarPath::new(&g, &mm, vec![5, 1, 2]).unwrap();
        match merge_star_paths(&g, &mm, &p1, &p2).unwrap() {
            MergeOutcome::StarPath(p) => assert_eq!(p.vertices(), &[5, 1, 2, 3, 4]),
            MergeOutcome::Augmenting(p) => panic!("expected star path, got {p:?}"),
        }
    }

    #[test]
    fn merge_rejects_disjoint_paths() {
        let g = Graph::new(2);
        let mm = Matching::new();
        let a = StarPath::new(&g, &mm, vec![0]).unwrap();
        let b = StarPath::new(&g, &mm, vec![1]).unwrap();
        assert!(matches!(
            merge_star_paths(&g, &mm, &a, &b),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn witness_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(all_star_component_witness(&k3, &m(&[(0, 1)]), &[0, 1, 2]).unwrap(), 2);

        let c5 = Graph::cycle(5);
        let mm = maximum_matching(&c5);
        let exposed = (0..5).find(|&v| !mm.covers(v)).unwrap();
        assert_eq!(all_star_component_witness(&c5, &mm, &[0, 1, 2, 3, 4]).unwrap(), exposed);

        let two = k3.disjoint_union(&k3);
        let mm = maximum_matching(&two);
        for comp in two.components().iter() {
            let w = all_star_component_witness(&two, &mm, comp).unwrap();
            assert!(comp.contains(&w));
        }

        // not maximum
        assert!(all_star_component_witness(&k3, &Matching::new(), &[0, 1, 2]).is_err());
        // contains a non-star vertex
        let p3 = Graph::path(3);
        assert!(all_star_component_witness(&p3, &m(&[(0, 1)]), &[0, 1, 2]).is_err());
    }

    #[test]
    fn factor_critical_examples() {
        assert!(is_factor_critical(&Graph::complete(3)));
        assert!(is_factor_critical(&Graph::cycle(5)));
        assert!(!is_factor_critical(&Graph::complete(2)));
        assert!(is_factor_critical(&Graph::new(1)));
        assert!(!is_factor_critical(&Graph::new(0)));

        assert!(is_factor_critical_via_star(&Graph::complete(3)));
        assert!(!is_factor_critical_via_star(&Graph::path(3)));
        assert!(!is_factor_critical_via_star(&Graph::complete(3).with_isolated(1)));
    }

    #[test]
    fn gallai_examples() {
        assert!(gallai_check(&Graph::cycle(5)).unwrap());
        assert!(gallai_check(&Graph::complete(3)).unwrap());
        assert!(matches!(gallai_check(&Graph::path(3)), Err(Error::Precondition(_))));
    }
}
