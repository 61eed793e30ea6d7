//! Exhaustive cross-checks over every labeled graph on a few vertices.

use std::collections::BTreeSet;

use degmatch::canon::canonical_form_without_isolated;
use degmatch::matching::{is_maximum, maximum_matching, nu};
use degmatch::star::star_set;
use degmatch::verify::{classes_with_at_least, exhaustive_search, is_member_f, random_maximal_graph};
use degmatch::{Edge, Graph, Matching};

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |code| {
        let mut g = Graph::new(n);
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if code >> k & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    })
}

/// Every matching of `g` with exactly `size` edges.
fn matchings_of_size(g: &Graph, size: usize) -> Vec<Matching> {
    fn go(edges: &[Edge], at: usize, used: &mut Vec<bool>, cur: &mut Vec<Edge>, size: usize, out: &mut Vec<Matching>) {
        if cur.len() == size {
            out.push(cur.iter().copied().collect());
            return;
        }
        for (i, e) in edges.iter().enumerate().skip(at) {
            if used[e.u] || used[e.v] {
                continue;
            }
            used[e.u] = true;
            used[e.v] = true;
            cur.push(*e);
            go(edges, i + 1, used, cur, size, out);
            cur.pop();
            used[e.u] = false;
            used[e.v] = false;
        }
    }
    let edges: Vec<Edge> = g.edges().collect();
    let mut out = Vec::new();
    go(&edges, 0, &mut vec![false; g.n()], &mut Vec::new(), size, &mut out);
    out
}

#[test]
fn enumerator_matches_naive_scan() {
    for n in 2..=6 {
        let graphs: Vec<Graph> = all_graphs(n).collect();
        for d in 2..=4 {
            for m in 2..=4 {
                let feasible: Vec<&Graph> = graphs.iter().filter(|g| g.max_degree() < d && nu(g) < m).collect();
                let naive_max = feasible.iter().map(|g| g.edge_count()).max().unwrap();
                let found = exhaustive_search(d, m, n).unwrap();
                assert_eq!(found.max_edges, naive_max, "d={d} m={m} n={n}");

                let threshold = naive_max.saturating_sub(1);
                let naive: BTreeSet<_> = feasible
                    .iter()
                    .filter(|g| g.edge_count() >= threshold)
                    .map(|g| canonical_form_without_isolated(g).unwrap())
                    .collect();
                let fast = classes_with_at_least(d, m, n, threshold).unwrap();
                assert_eq!(fast, naive, "classes d={d} m={m} n={n}");
            }
        }
    }
}

#[test]
fn star_set_does_not_depend_on_the_maximum_matching() {
    for n in 1..=6 {
        for g in all_graphs(n) {
            let size = nu(&g);
            let mut sets = matchings_of_size(&g, size)
                .into_iter()
                .map(|m| star_set(&g, &m).unwrap().vertices());
            let first = sets.next().unwrap();
            assert!(sets.all(|s| s == first), "{g:?}");
        }
    }
}

#[test]
fn adding_an_edge_at_a_non_star_vertex() {
    for n in 2..=6 {
        for (idx, g) in all_graphs(n).enumerate() {
            if n == 6 && idx % 5 != 0 {
                continue;
            }
            let m = maximum_matching(&g);
            let stars = star_set(&g, &m).unwrap();
            for v in stars.complement() {
                for u in 0..n {
                    if u == v || g.has_edge(u, v) {
                        continue;
                    }
                    let mut h = g.clone();
                    h.add_edge(u, v).unwrap();
                    assert_eq!(nu(&h), nu(&g));
                    assert!(is_maximum(&h, &m));
                    assert!(!star_set(&h, &m).unwrap().contains(v));
                }
            }
        }
    }
}

#[test]
fn non_star_vertices_of_members_have_full_degree() {
    for d in 3..=5 {
        for m in 2..=4 {
            for seed in 0..20 {
                let n = (m - 1) * d + (seed as usize % 4);
                let g = random_maximal_graph(d, m, n, seed).unwrap();
                assert!(is_member_f(&g, d, m).is_member());
                let mt = maximum_matching(&g);
                for v in star_set(&g, &mt).unwrap().complement() {
                    assert_eq!(g.degree(v).unwrap(), d - 1, "F({d},{m}) seed {seed} vertex {v}");
                }
            }
        }
    }
}
