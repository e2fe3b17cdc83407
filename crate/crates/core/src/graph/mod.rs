//! Simple graphs, multigraphs and the structural utilities every other
//! module builds on: induced subgraphs, block decomposition, thread
//! contraction / subdivision and cycle bookkeeping.
//!
//! Vertices are dense ids `0..n`. All set-valued outputs are sorted.

mod blocks;
mod cycles;
pub mod edgelist;
mod multigraph;
mod threads;

pub use blocks::{block_decomposition, Block, BlockDecomposition};
pub use cycles::{
    cycle_orders, cycle_orders_bounded, for_each_cycle, girth, shortest_cycle, CycleVisit, DEFAULT_CYCLE_VERTEX_BOUND,
};
pub use multigraph::Multigraph;
pub use threads::{contract_threads, subdivide, subdivide_with_threads, Subdivision, Thread};

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0} is not allowed in a simple graph")]
    Loop(usize),
    #[error("parallel edge {0}-{1} is not allowed in a simple graph")]
    ParallelEdge(usize, usize),
    #[error("vertex {0} has degree != 2 but is not an anchor")]
    UnanchoredBranch(usize),
    #[error("2-regular component containing vertex {0} has no anchor")]
    UnanchoredCycle(usize),
    #[error("k must be positive")]
    ZeroK,
    #[error("{k}-subdivision of this multigraph is not a simple graph")]
    NotSimple { k: usize },
    #[error("instance too large: {what} is {got}, limit {limit}")]
    TooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },
}

/// A finite simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted, so equal graphs
/// compare and serialize identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = GraphError;
    fn try_from(raw: RawGraph) -> Result<Self, Self::Error> {
        Graph::new(raw.n, raw.edges)
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph { n: g.n, edges: g.edges }
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, parallel edges and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        for w in canon.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::ParallelEdge(w[0].0, w[0].1));
            }
        }
        Ok(Self::from_sorted_edges(n, canon))
    }

    fn from_sorted_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_edges(n, Vec::new())
    }

    pub fn path(n: usize) -> Self {
        Self::from_sorted_edges(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    /// The cycle `0 1 ... n-1 0`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        edges.sort_unstable();
        Self::from_sorted_edges(n, edges)
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::from_sorted_edges(n, edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Self::from_sorted_edges(a + b, edges)
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_sorted_edges(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Adjacency as bitmasks. Only valid for `n <= 64`.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask adjacency needs n <= 64");
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect()
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.m() + self.components().len() == self.n
    }

    /// Proper 2-colouring if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    /// Same vertex set, edge `e` removed (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let key = (u.min(v), u.max(v));
        Self::from_sorted_edges(self.n, self.edges.iter().copied().filter(|&e| e != key).collect())
    }

    /// Spanning subgraph keeping the edges whose index bit is set in `mask`.
    pub fn spanning_subgraph(&self, mask: u64) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Self::from_sorted_edges(self.n, edges)
    }

    /// Disjoint union, `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Self::from_sorted_edges(self.n + other.n, edges)
    }

    /// Adds `extra` new vertices and the given edges (which may touch them).
    pub fn extended(&self, extra: usize, new_edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        Graph::new(
            self.n + extra,
            self.edges.iter().copied().chain(new_edges.iter().copied()),
        )
    }
}

/// An induced subgraph with the map back to the host's vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original[i]` is the host id of vertex `i`; ascending.
    pub original: Vec<usize>,
}

impl InducedSubgraph {
    pub fn to_original(&self, v: usize) -> usize {
        self.original[v]
    }

    pub fn to_local(&self, host: usize) -> Option<usize> {
        self.original.binary_search(&host).ok()
    }
}

/// Subgraph induced by `vertices`, relabelled `0..|s|` by ascending host id.
pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Result<InducedSubgraph, GraphError> {
    let mut original: Vec<usize> = vertices.to_vec();
    original.sort_unstable();
    original.dedup();
    if let Some(&bad) = original.iter().find(|&&v| v >= g.n) {
        return Err(GraphError::VertexOutOfRange { vertex: bad, n: g.n });
    }
    let mut local = vec![usize::MAX; g.n];
    for (i, &v) in original.iter().enumerate() {
        local[v] = i;
    }
    let edges = g
        .edges
        .iter()
        .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
        .map(|&(u, v)| (local[u], local[v]))
        .collect::<Vec<_>>();
    // Ascending relabelling preserves edge order.
    let graph = Graph::from_sorted_edges(original.len(), edges);
    Ok(InducedSubgraph { graph, original })
}

/// Induced subgraph on the complement of `removed`.
pub fn delete_vertices(g: &Graph, removed: &[usize]) -> InducedSubgraph {
    let mut keep = vec![true; g.n];
    for &v in removed {
        if v < g.n {
            keep[v] = false;
        }
    }
    let vertices: Vec<usize> = (0..g.n).filter(|&v| keep[v]).collect();
    induced_subgraph(g, &vertices).expect("kept vertices are in range")
}
