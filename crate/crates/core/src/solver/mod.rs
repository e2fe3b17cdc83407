//! Polynomial-time solvers with certificates on the recognised classes.
//!
//! Every solver works on a copy of the input that keeps the original vertex
//! ids: reductions delete vertices or edges, and each step records what it
//! removed and what it contributed in a [`ReductionTrace`]. The returned
//! certificates are always validated against the input graph.

mod assign;
mod bipartite;
mod certificate;
mod forest;
mod h4;
mod half;
mod hk_prime;
mod work;

pub use assign::{matching_edge_assignment, matching_partner_assignment};
pub use bipartite::{bipartite_matching, solve_bipartite_k2, BipartiteCertificate};
pub use certificate::{format_certificates, parse_certificates, CertificateFile, CertificateFormatError};
pub use forest::solve_forest;
pub use h4::solve_h4;
pub use half::bip_half_subdivision_certificates;
pub use hk_prime::solve_hk_prime;

use serde::Serialize;
use thiserror::Error;

use crate::oracle::{validate_certificates, CertificateError, KMatching, KPath, KVertexCover};
use crate::recognition::Violation;
use crate::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("k must be positive")]
    ZeroK,
    #[error("invalid k = {0} for this solver")]
    InvalidK(usize),
    #[error("input contains a cycle")]
    Cyclic,
    #[error("input is not in the class: {0}")]
    NotMember(Violation),
    #[error("multigraph is disconnected")]
    Disconnected,
    #[error("multigraph has no cycle")]
    Acyclic,
    #[error("bipartition is invalid at edge {0}-{1}")]
    BadBipartition(usize, usize),
    #[error("multigraph is not bipartite")]
    NotBipartite,
    #[error("cannot subdivide: {0}")]
    Subdivision(String),
    #[error("certificate check failed: {0}")]
    Certificate(#[from] CertificateError),
    #[error("reduction got stuck: {0}")]
    Stuck(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReductionRule {
    /// A pendant tree whose k-paths all pass through its attachment vertex.
    TreeRule,
    /// `Sub_k(H)` block: `n(H)` paths from an injective edge assignment, cover `V(H)`.
    SubdivisionRule,
    /// `K_4` or `T(2)` endblock: one path, one cover vertex.
    EndblockRule,
    /// Edge of a `T(p)` block through all of its cutvertices is removed.
    EdgeDeletionRule,
    /// `Sub_2(H)` block at a leaf of the block structure, solved through a
    /// bipartite matching of `H` with pendant edges added.
    LeafBlockRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub rule: ReductionRule,
    pub removed_vertices: Vec<usize>,
    pub removed_edges: Vec<(usize, usize)>,
    pub matching: Vec<KPath>,
    /// Vertices added to the cover of the remaining graph.
    pub cover: Vec<usize>,
    /// Vertices taken out of the cover of the remaining graph first (only
    /// edge deletions repair the cover this way).
    pub cover_removed: Vec<usize>,
    pub delta: usize,
}

/// Steps in the order they were applied. The cover of the graph before a
/// step is the cover after it, minus `cover_removed`, plus `cover`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn total_delta(&self) -> usize {
        self.steps.iter().map(|s| s.delta).sum()
    }

    /// Rebuilds both certificates from the steps alone.
    pub fn replay(&self) -> (KMatching, KVertexCover) {
        let paths = self.steps.iter().flat_map(|s| s.matching.iter().cloned()).collect();
        let mut cover = std::collections::BTreeSet::new();
        for s in self.steps.iter().rev() {
            for v in &s.cover_removed {
                cover.remove(v);
            }
            cover.extend(s.cover.iter().copied());
        }
        (KMatching::new(paths), KVertexCover::new(cover.into_iter().collect()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub k: usize,
    /// `nu_k = tau_k`.
    pub value: usize,
    pub matching: KMatching,
    pub cover: KVertexCover,
    pub trace: ReductionTrace,
}

impl Solution {
    /// Replays the trace and validates the certificates against `g`.
    pub(crate) fn from_trace(g: &Graph, k: usize, trace: ReductionTrace) -> Result<Self, SolveError> {
        let (matching, cover) = trace.replay();
        validate_certificates(g, k, &matching, &cover)?;
        debug_assert_eq!(trace.total_delta(), matching.len());
        Ok(Solution {
            k,
            value: matching.len(),
            matching,
            cover,
            trace,
        })
    }
}
