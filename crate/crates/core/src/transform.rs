//! Rewrites a member of F(d, m) into a graph whose components are claws
//! `K_{1,d-1}` and factor-critical graphs with the same `ν`.
//!
//! Each step strips the claw components, picks the least non-star vertex `v`
//! of what is left, hangs its reserved pool of `d - 1` isolated vertices on
//! it, and cuts its old edges, which turns `v` into a new claw center.
//! Vertex ids never change; the claw-free part is an induced view.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bounds::{self, claw_center, component_edge_bound, PartitionProfile};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Matching, Subgraph};
use crate::matching::{is_matching, is_maximum, maximum_matching, nu};
use crate::star::{is_factor_critical, star_set};
use crate::verify::require_member;

/// One line of the step log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub k: usize,
    pub chosen_v: usize,
    pub removed_edges: Vec<[usize; 2]>,
    pub added_edges: Vec<[usize; 2]>,
    pub nu: usize,
    pub edge_count: usize,
}

impl StepRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// What a step does when the chosen vertex has degree below `d - 1`.
///
/// The input graph is edge-maximal, so its non-star vertices have degree
/// `d - 1`. Later graphs keep `Δ < d` and `ν` but need not be edge-maximal,
/// and then a non-star vertex of smaller degree can be chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DegreePolicy {
    /// Treat it as an invariant violation; every step keeps `|E|` exactly.
    #[default]
    Strict,
    /// Attach the whole pool anyway, so `|E|` grows by the deficit.
    AttachFullPool,
}

#[derive(Clone, Debug)]
pub struct TransformState {
    pub k: usize,
    pub d: usize,
    pub policy: DegreePolicy,
    pub graph: Graph,
    pub matching: Matching,
    /// `T_v` for every vertex saturated by the initial matching.
    pub pool: BTreeMap<usize, Vec<usize>>,
    /// Vertices whose pool has been consumed.
    pub consumed: Vec<usize>,
    pub stripped_claws: usize,
    pub log: Vec<StepRecord>,
    initial_nu: usize,
}

impl TransformState {
    pub fn initial_nu(&self) -> usize {
        self.initial_nu
    }
}

/// Ensures `2 ν (d - 1)` isolated vertices exist, appending fresh ones if
/// needed, and deals them out in ascending order as pools of size `d - 1`,
/// one per saturated vertex in ascending order.
pub fn attach_isolated_pool(g: &Graph, m: &Matching, d: usize) -> Result<TransformState> {
    if d < 2 {
        return Err(Error::argument(format!("need d >= 2, got {d}")));
    }
    if !is_maximum(g, m) {
        return Err(Error::precondition("the matching must be a maximum matching of the graph"));
    }
    let needed = 2 * m.len() * (d - 1);
    let have = g.isolated_vertices().len();
    let graph = g.with_isolated(needed.saturating_sub(have));
    let mut isolated = graph.isolated_vertices().into_iter();
    let mut pool = BTreeMap::new();
    for v in m.covered() {
        pool.insert(v, isolated.by_ref().take(d - 1).collect());
    }
    Ok(TransformState {
        k: 0,
        d,
        policy: DegreePolicy::Strict,
        initial_nu: m.len(),
        graph,
        matching: m.clone(),
        pool,
        consumed: Vec::new(),
        stripped_claws: 0,
        log: Vec::new(),
    })
}

/// Claw-free part of the current graph.
#[derive(Clone, Debug)]
pub struct StrippedView {
    pub sub: Subgraph,
    pub matching: Matching,
    pub claws: usize,
}

pub fn strip_claws(state: &TransformState) -> Result<StrippedView> {
    let g = &state.graph;
    let mut keep = Vec::new();
    let mut claws = 0;
    for comp in g.components().iter() {
        if claw_center(g, comp, state.d).is_some() {
            claws += 1;
        } else {
            keep.extend_from_slice(comp);
        }
    }
    keep.sort_unstable();
    let sub = g.induced_subgraph(&keep);
    let matching = sub.restrict(&state.matching);
    if matching.len() + claws != state.initial_nu {
        return Err(Error::internal(format!(
            "claw-free part keeps {} matching edges beside {claws} claws, expected {} in total",
            matching.len(),
            state.initial_nu
        )));
    }
    if !is_maximum(&sub.graph, &matching) {
        return Err(Error::internal("restricted matching is not maximum on the claw-free part"));
    }
    Ok(StrippedView { sub, matching, claws })
}

fn pairs<I: IntoIterator<Item = Edge>>(edges: I) -> Vec<[usize; 2]> {
    edges.into_iter().map(|e| [e.u, e.v]).collect()
}

/// Least non-star vertex of the claw-free part, in host ids.
fn next_vertex(view: &StrippedView) -> Result<Option<usize>> {
    let star = star_set(&view.sub.graph, &view.matching)?;
    Ok(star.complement().first().map(|&v| view.sub.new_to_old[v]))
}

pub fn transform_step(state: &TransformState) -> Result<TransformState> {
    let d = state.d;
    let view = strip_claws(state)?;
    let v = next_vertex(&view)?
        .ok_or_else(|| Error::precondition("every vertex of the claw-free part is a star vertex"))?;
    let g = &state.graph;
    let degree = g.neighbors(v).len();
    if degree != d - 1 && (state.policy == DegreePolicy::Strict || state.k == 0) {
        return Err(Error::internal(format!(
            "non-star vertex {v} has degree {}, expected {}",
            g.neighbors(v).len(),
            d - 1
        )));
    }
    if state.consumed.contains(&v) {
        return Err(Error::internal(format!("pool of vertex {v} was already used")));
    }
    let reserve = state
        .pool
        .get(&v)
        .ok_or_else(|| Error::internal(format!("non-star vertex {v} has no pool")))?;

    let mut next = g.clone();
    for &w in reserve {
        next = next
            .oplus(v, w)
            .map_err(|e| Error::internal(format!("pool vertex {w} unusable: {e}")))?;
    }
    let next = next.ominus(v, g)?;
    let removed: Vec<Edge> = g.neighbors(v).iter().map(|&u| Edge::new(v, u)).collect();
    let added: Vec<Edge> = reserve.iter().map(|&w| Edge::new(v, w)).collect();

    let mut matching: Matching = state.matching.edges().filter(|e| next.has_edge(e.u, e.v)).collect();
    matching.insert(Edge::new(v, reserve[0]));

    let nu_next = nu(&next);
    let checks = [
        (removed.len() == degree && added.len() == d - 1, "wrong number of edges moved"),
        (next.edge_count() == g.edge_count() + (d - 1 - degree), "edge count changed"),
        (next.max_degree() < d, "maximum degree reached d"),
        (nu_next == state.initial_nu, "matching number changed"),
        (is_matching(&next, &matching), "rebuilt matching is not a matching"),
        (matching.len() == nu_next, "rebuilt matching is not maximum"),
    ];
    if let Some((_, what)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(Error::internal(format!("step {} at vertex {v}: {what}", state.k)));
    }

    let mut consumed = state.consumed.clone();
    consumed.push(v);
    let mut log = state.log.clone();
    log.push(StepRecord {
        k: state.k,
        chosen_v: v,
        removed_edges: pairs(removed),
        added_edges: pairs(added),
        nu: nu_next,
        edge_count: next.edge_count(),
    });
    let out = TransformState {
        k: state.k + 1,
        d,
        policy: state.policy,
        graph: next,
        matching,
        pool: state.pool.clone(),
        consumed,
        stripped_claws: view.claws,
        log,
        initial_nu: state.initial_nu,
    };
    let after = strip_claws(&out)?;
    // at least one unit of matching moves into claws; more can follow when
    // the cut leaves further claw components behind
    if after.matching.len() >= view.matching.len() {
        return Err(Error::internal(format!(
            "step {} did not shrink the claw-free matching ({} -> {})",
            state.k,
            view.matching.len(),
            after.matching.len()
        )));
    }
    Ok(TransformState {
        stripped_claws: after.claws,
        ..out
    })
}

/// A factor-critical component of the final graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorComponent {
    pub vertices: Vec<usize>,
    pub r: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinalDecomposition {
    pub t: usize,
    pub factor_components: Vec<FactorComponent>,
    pub isolated: usize,
}

impl FinalDecomposition {
    /// `t + sum(r_i)`, the matching number of the graph.
    pub fn matching_total(&self) -> usize {
        self.t + self.factor_components.iter().map(|c| c.r).sum::<usize>()
    }

    pub fn profile(&self, d: usize) -> PartitionProfile {
        let j = d / 2;
        let mut profile = PartitionProfile {
            t: self.t,
            j_size: 0,
            r_list: Vec::new(),
        };
        for c in &self.factor_components {
            if c.r == j {
                profile.j_size += 1;
            } else {
                profile.r_list.push(c.r);
            }
        }
        profile
    }
}

/// Splits a fixpoint graph into claws, nontrivial factor-critical
/// components, and isolated vertices.
pub fn decompose_final(g: &Graph, matching: &Matching, d: usize) -> Result<FinalDecomposition> {
    if !is_maximum(g, matching) {
        return Err(Error::precondition("the matching must be a maximum matching of the graph"));
    }
    let mut out = FinalDecomposition {
        t: 0,
        factor_components: Vec::new(),
        isolated: 0,
    };
    for comp in g.components().iter() {
        if comp.len() == 1 {
            out.isolated += 1;
            continue;
        }
        if claw_center(g, comp, d).is_some() {
            out.t += 1;
            continue;
        }
        let sub = g.induced_subgraph(comp);
        if !is_factor_critical(&sub.graph) {
            return Err(Error::internal(format!(
                "component {comp:?} is neither a claw nor factor-critical"
            )));
        }
        let r = sub.restrict(matching).len();
        let edges = sub.graph.edge_count();
        if comp.len() != 2 * r + 1 || edges > component_edge_bound(r, d) {
            return Err(Error::internal(format!(
                "factor-critical component {comp:?} has {} vertices, {edges} edges and r = {r}",
                comp.len()
            )));
        }
        out.factor_components.push(FactorComponent {
            vertices: comp.to_vec(),
            r,
            edges,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct TransformOutcome {
    pub graph: Graph,
    pub matching: Matching,
    pub decomposition: FinalDecomposition,
    pub steps: Vec<StepRecord>,
}

/// Runs strict steps until every vertex of the claw-free part is a star
/// vertex.
pub fn transform(g: &Graph, d: usize, m: usize) -> Result<TransformOutcome> {
    transform_with(g, d, m, DegreePolicy::Strict)
}

pub fn transform_with(g: &Graph, d: usize, m: usize, policy: DegreePolicy) -> Result<TransformOutcome> {
    bounds::BoundParams::new(d, m)?;
    require_member(g, d, m)?;
    let mut state = attach_isolated_pool(g, &maximum_matching(g), d)?;
    state.policy = policy;
    loop {
        let view = strip_claws(&state)?;
        state.stripped_claws = view.claws;
        if next_vertex(&view)?.is_none() {
            break;
        }
        if state.k >= m - 1 {
            return Err(Error::internal(format!("no fixpoint after {} steps", state.k)));
        }
        state = transform_step(&state)?;
    }
    let edges_ok = match policy {
        DegreePolicy::Strict => state.graph.edge_count() == g.edge_count(),
        DegreePolicy::AttachFullPool => state.graph.edge_count() >= g.edge_count(),
    };
    if !edges_ok || nu(&state.graph) != nu(g) || state.graph.max_degree() >= d {
        return Err(Error::internal("final graph breaks the ν, edge count or degree guarantee"));
    }
    let decomposition = decompose_final(&state.graph, &state.matching, d)?;
    if decomposition.matching_total() != m - 1 {
        return Err(Error::internal("final decomposition does not account for ν = m - 1"));
    }
    Ok(TransformOutcome {
        graph: state.graph,
        matching: state.matching,
        decomposition,
        steps: state.log,
    })
}
