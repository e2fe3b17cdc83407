use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use super::{Graph, GraphError};

/// Undirected multigraph; `(u, u)` is a loop. Edge order is significant
/// (edge ids are positions) but each pair is stored with `u <= v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut out = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            out.push((u.min(v), u.max(v)));
        }
        Ok(Multigraph { n, edges: out })
    }

    pub fn from_graph(g: &Graph) -> Self {
        Multigraph {
            n: g.n(),
            edges: g.edges().to_vec(),
        }
    }

    /// Single vertex with one loop.
    pub fn loop_at_single_vertex() -> Self {
        Multigraph {
            n: 1,
            edges: vec![(0, 0)],
        }
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

    pub fn push_edge(&mut self, u: usize, v: usize) -> usize {
        self.edges.push((u.min(v), u.max(v)));
        self.edges.len() - 1
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    /// Total degree; a loop counts twice.
    pub fn degree(&self, u: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == u) as usize + (b == u) as usize)
            .sum()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    pub fn is_simple(&self) -> bool {
        if self.has_loops() {
            return false;
        }
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Edge multiset in sorted order; equal iff the labelled multigraphs agree.
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    /// Incident edge ids of `u` (a loop appears once).
    pub fn incident_edges(&self, u: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].0 == u || self.edges[i].1 == u)
            .collect()
    }

    pub fn other_end(&self, edge: usize, u: usize) -> usize {
        let (a, b) = self.edges[edge];
        if a == u {
            b
        } else {
            a
        }
    }

    fn connected_ignoring(&self, skip: Option<usize>) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if Some(i) != skip && u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_connected(&self) -> bool {
        self.connected_ignoring(None)
    }

    /// Cyclomatic number `m - n + c`.
    pub fn cyclomatic_number(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let mut cycle_edges = 0;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                cycle_edges += 1;
            } else {
                parent[a] = b;
            }
        }
        cycle_edges
    }

    /// Least edge id lying on a cycle (loops and parallel edges included).
    pub fn first_cycle_edge(&self) -> Option<usize> {
        (0..self.edges.len()).find(|&i| {
            let (u, v) = self.edges[i];
            u == v || self.connected_ignoring(Some(i))
        })
    }

    /// Proper 2-colouring; `None` if there is an odd cycle or a loop.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        if self.has_loops() {
            return None;
        }
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &adj[u] {
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
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    /// Shortest cycle length counting loops (1) and parallel pairs (2).
    pub fn girth(&self) -> Option<usize> {
        if self.has_loops() {
            return Some(1);
        }
        if !self.is_simple() {
            return Some(2);
        }
        let g = Graph::new(self.n, self.edges.iter().copied()).expect("simple multigraph");
        super::girth(&g)
    }
}
