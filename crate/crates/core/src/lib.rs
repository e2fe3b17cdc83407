//! Exact toolkit for k-path packings and k-path vertex covers.
//!
//! A *k-path* is a path on `k` vertices (not necessarily induced). The
//! crate computes the k-matching number `nu_k` and the k-vertex cover
//! number `tau_k` exactly, solves their LP relaxations over exact
//! rationals, recognises the graph classes on which the two numbers
//! coincide hereditarily for `k = 3`, `k = 4` and odd `k` with large girth,
//! and produces certificates in polynomial time on those classes.

pub mod graph;
pub mod lp;
pub mod oracle;
pub mod recognition;
pub mod solver;

pub use graph::{Graph, GraphError, Multigraph};
