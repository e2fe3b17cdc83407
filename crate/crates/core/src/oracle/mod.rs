//! Exact brute-force computation of `nu_k`, `tau_k`, all minimum covers and
//! membership in `G_k`. Ground truth for every other module; desk scale only.

mod exact;
mod membership;
mod paths;
mod search;

pub use exact::{all_min_covers, all_min_covers_with, nu_k, nu_k_with, tau_k, tau_k_with};
pub use membership::{in_gk, in_gk_all_subgraphs, in_gk_all_subgraphs_with, in_gk_with};
pub use paths::{enumerate_kpaths, for_each_kpath, has_kpath_avoiding};

use serde::Serialize;
use std::collections::BTreeSet;
use std::ops::ControlFlow;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("k must be positive")]
    ZeroK,
    #[error("oracle budget exceeded: {what} {got} > {limit}")]
    Budget {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("malformed budget specification: {0}")]
    BadBudget(String),
}

/// Resource caps. Exceeding any of them yields [`OracleError::Budget`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleConfig {
    /// Largest connected component handled by `nu_k`/`tau_k` (hard cap 64).
    pub max_vertices: usize,
    /// k-paths enumerated per component.
    pub max_paths: usize,
    /// Memoised search states per component.
    pub max_states: usize,
    /// Vertex cap for the subset sweep in `in_gk` (hard cap 26).
    pub max_subset_vertices: usize,
    /// Edge cap for the edge-subset sweep in `in_gk_all_subgraphs` (hard cap 30).
    pub max_subgraph_edges: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_vertices: 64,
            max_paths: 1 << 21,
            max_states: 1 << 22,
            max_subset_vertices: 22,
            max_subgraph_edges: 24,
        }
    }
}

pub const BUDGET_ENV: &str = "KPATH_BUDGET";

impl OracleConfig {
    /// Parses `key=value[,key=value...]` with keys `vertices`, `paths`,
    /// `states`, `subset-vertices`, `subgraph-edges`. A bare integer sets
    /// both `paths` and `states`.
    pub fn parse(spec: &str) -> Result<Self, OracleError> {
        let mut cfg = OracleConfig::default();
        let bad = || OracleError::BadBudget(spec.to_string());
        let spec = spec.trim();
        if let Ok(v) = spec.parse::<usize>() {
            cfg.max_paths = v;
            cfg.max_states = v;
            return Ok(cfg);
        }
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(bad)?;
            let value: usize = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "vertices" => cfg.max_vertices = value.min(64),
                "paths" => cfg.max_paths = value,
                "states" => cfg.max_states = value,
                "subset-vertices" => cfg.max_subset_vertices = value.min(26),
                "subgraph-edges" => cfg.max_subgraph_edges = value.min(30),
                _ => return Err(bad()),
            }
        }
        Ok(cfg)
    }

    /// Defaults, overridden by `KPATH_BUDGET` when set.
    pub fn from_env() -> Result<Self, OracleError> {
        match std::env::var(BUDGET_ENV) {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("path {0:?} does not have k = {1} vertices")]
    WrongLength(Vec<usize>, usize),
    #[error("path {0:?} repeats a vertex or leaves the graph")]
    NotAPath(Vec<usize>),
    #[error("paths share vertex {0}")]
    Overlap(usize),
    #[error("cover vertex {0} is not in the graph")]
    BadCoverVertex(usize),
    #[error("k-path {0:?} avoids the cover")]
    Uncovered(Vec<usize>),
    #[error("matching has {matching} paths but cover has {cover} vertices")]
    SizeMismatch { matching: usize, cover: usize },
}

/// A path on `k` vertices, stored with first endpoint <= last endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KPath {
    vertices: Vec<usize>,
}

impl KPath {
    /// Validates `vertices` as a path of `g` and orients it canonically.
    pub fn new(g: &Graph, mut vertices: Vec<usize>) -> Result<Self, CertificateError> {
        let distinct: BTreeSet<usize> = vertices.iter().copied().collect();
        let ok = !vertices.is_empty()
            && distinct.len() == vertices.len()
            && vertices.iter().all(|&v| v < g.n())
            && vertices.windows(2).all(|w| g.has_edge(w[0], w[1]));
        if !ok {
            return Err(CertificateError::NotAPath(vertices));
        }
        if vertices[0] > *vertices.last().unwrap() {
            vertices.reverse();
        }
        Ok(KPath { vertices })
    }

    pub(crate) fn from_canonical(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.first() <= vertices.last());
        KPath { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub(crate) fn relabel(&self, map: impl Fn(usize) -> usize) -> KPath {
        let mut vertices: Vec<usize> = self.vertices.iter().map(|&v| map(v)).collect();
        if vertices[0] > *vertices.last().unwrap() {
            vertices.reverse();
        }
        KPath { vertices }
    }
}

/// Pairwise vertex-disjoint k-paths, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct KMatching {
    paths: Vec<KPath>,
}

impl KMatching {
    pub fn new(mut paths: Vec<KPath>) -> Self {
        paths.sort();
        KMatching { paths }
    }

    pub fn paths(&self) -> &[KPath] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn validate(&self, g: &Graph, k: usize) -> Result<(), CertificateError> {
        let mut used = vec![false; g.n()];
        for p in &self.paths {
            if p.order() != k {
                return Err(CertificateError::WrongLength(p.vertices.clone(), k));
            }
            KPath::new(g, p.vertices.clone())?;
            for &v in &p.vertices {
                if used[v] {
                    return Err(CertificateError::Overlap(v));
                }
                used[v] = true;
            }
        }
        Ok(())
    }
}

/// A vertex set meeting every k-path, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KVertexCover {
    vertices: Vec<usize>,
}

impl KVertexCover {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        KVertexCover { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn validate(&self, g: &Graph, k: usize) -> Result<(), CertificateError> {
        let mut blocked = vec![false; g.n()];
        for &v in &self.vertices {
            if v >= g.n() {
                return Err(CertificateError::BadCoverVertex(v));
            }
            blocked[v] = true;
        }
        match has_kpath_avoiding(g, k, &blocked) {
            Some(p) => Err(CertificateError::Uncovered(p)),
            None => Ok(()),
        }
    }
}

/// Checks both certificates and that their sizes agree, which proves
/// `nu_k(g) = tau_k(g) = matching.len()`.
pub fn validate_certificates(
    g: &Graph,
    k: usize,
    matching: &KMatching,
    cover: &KVertexCover,
) -> Result<(), CertificateError> {
    matching.validate(g, k)?;
    cover.validate(g, k)?;
    if matching.len() != cover.len() {
        return Err(CertificateError::SizeMismatch {
            matching: matching.len(),
            cover: cover.len(),
        });
    }
    Ok(())
}

/// Distinct vertex sets of the k-paths of `g` (n <= 64), sorted.
pub(crate) fn path_masks(g: &Graph, k: usize, max_paths: usize) -> Result<Vec<u64>, OracleError> {
    assert!(g.n() <= 64);
    let mut masks = Vec::new();
    let mut count = 0usize;
    let mut over = false;
    for_each_kpath(g, k, |p| {
        count += 1;
        if count > max_paths {
            over = true;
            return ControlFlow::Break(());
        }
        masks.push(p.iter().fold(0u64, |m, &v| m | 1 << v));
        ControlFlow::Continue(())
    });
    if over {
        return Err(OracleError::Budget {
            what: "k-paths",
            got: count,
            limit: max_paths,
        });
    }
    masks.sort_unstable();
    masks.dedup();
    Ok(masks)
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}
