//! Graphs with bounded maximum degree and bounded matching number.
//!
//! For integers `d, m >= 2`, `F(d, m)` is the family of edge-maximal simple
//! graphs with `Δ(G) < d` and `ν(G) < m`, and `e(d, m)` is the largest edge
//! count in the family:
//!
//! ```text
//! e(d, m) = (d-1)(m-1) + floor((m-1) / ceil((d-1)/2)) * floor((d-1)/2)
//! ```
//!
//! The crate computes the bound, builds extremal graphs, runs the
//! star-path machinery and the claw transformation that underlie it, and
//! checks everything against exhaustive search on small instances.

pub mod bounds;
pub mod canon;
pub mod cli;
pub mod error;
pub mod graph;
pub mod io;
pub mod matching;
pub mod star;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{ComponentPartition, Edge, Graph, Matching, Subgraph};
