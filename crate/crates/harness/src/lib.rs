//! Exhaustive verification harness: small-graph generation, graph6 input,
//! and sweeps comparing recognizers and conjectured properties with the
//! brute-force oracles.

pub mod canon;
pub mod generate;
pub mod graph6;
pub mod verify;

use thiserror::Error;

pub use canon::{canonical_edge_list, canonical_form, canonical_key};
pub use generate::generate_hereditary;
pub use graph6::{parse_graph6, parse_graph6_lines, to_graph6, Graph6Error};
pub use verify::{
    enumerate_graphs, membership_table, probe_subgraph_closure, verify_graphs, verify_theorem, CheckKind,
    EnumerationSpec, HarnessConfig, MembershipEntry, SkippedEntry, VerificationReport, DEFAULT_CAP,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("n = {n} exceeds the generator cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("inconsistent enumeration spec: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
}
