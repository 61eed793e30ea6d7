//! Edge-list text format and Graphviz DOT export.
//!
//! The edge-list format is line oriented: the first non-comment line holds the
//! vertex count `n`, every following non-comment line holds one edge `u v`
//! with `0 <= u < v < n`. Lines starting with `#` are comments. Blank lines
//! are ignored and the trailing newline is optional.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, Matching};

fn parse_id(token: &str, line: usize) -> Result<usize> {
    token.parse::<usize>().map_err(|_| Error::Parse {
        line,
        message: format!("expected a nonnegative integer, found {token:?}"),
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match graph.as_mut() {
            None => {
                if tokens.len() != 1 {
                    return Err(Error::Parse {
                        line,
                        message: "expected the vertex count on its own line".into(),
                    });
                }
                graph = Some(Graph::new(parse_id(tokens[0], line)?));
            }
            Some(g) => {
                if tokens.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        message: format!("expected \"u v\", found {content:?}"),
                    });
                }
                let u = parse_id(tokens[0], line)?;
                let v = parse_id(tokens[1], line)?;
                let n = g.n();
                let message = if u >= n || v >= n {
                    Some(format!("vertex id out of range (n = {n})"))
                } else if u == v {
                    Some(format!("self-loop at vertex {u}"))
                } else if g.has_edge(u, v) {
                    Some(format!("duplicate edge {} {}", u.min(v), u.max(v)))
                } else {
                    None
                };
                if let Some(message) = message {
                    return Err(Error::Parse { line, message });
                }
                g.insert(u, v);
            }
        }
    }
    graph.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing vertex count".into(),
    })
}

/// Canonical serialization: vertex count, then edges in ascending order.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u, e.v);
    }
    out
}

pub fn to_dot(g: &Graph, highlight: Option<&Matching>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let _ = writeln!(out, "  {v};");
    }
    for e in g.edges() {
        let matched = highlight.is_some_and(|m| m.contains(&e));
        if matched {
            let _ = writeln!(out, "  {} -- {} [color=red, penwidth=2.5];", e.u, e.v);
        } else {
            let _ = writeln!(out, "  {} -- {};", e.u, e.v);
        }
    }
    out.push_str("}\n");
    out
}
