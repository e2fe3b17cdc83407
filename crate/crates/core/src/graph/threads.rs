use serde::Serialize;
use std::collections::HashSet;

use super::{Graph, GraphError, Multigraph};

/// Maximal path (or cycle) whose interior vertices all have degree 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Thread {
    pub start: usize,
    pub interior: Vec<usize>,
    pub end: usize,
}

impl Thread {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.interior.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_cycle(&self) -> bool {
        self.start == self.end
    }

    /// `start, interior..., end`.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.interior.len() + 2);
        out.push(self.start);
        out.extend_from_slice(&self.interior);
        out.push(self.end);
        out
    }

    pub fn reversed(&self) -> Thread {
        let mut interior = self.interior.clone();
        interior.reverse();
        Thread {
            start: self.end,
            interior,
            end: self.start,
        }
    }

    /// Interior ordered away from `from`, which must be an endpoint.
    pub fn interior_from(&self, from: usize) -> Vec<usize> {
        if from == self.start {
            self.interior.clone()
        } else {
            debug_assert_eq!(from, self.end);
            self.interior.iter().rev().copied().collect()
        }
    }
}

/// Contracts every thread between anchors into a multigraph edge.
///
/// Multigraph vertex `i` is the `i`-th smallest anchor; thread `j` is edge `j`.
/// Every non-anchor vertex must have degree exactly 2 and lie on a thread.
pub fn contract_threads(g: &Graph, anchors: &[usize]) -> Result<(Multigraph, Vec<Thread>), GraphError> {
    let mut sorted: Vec<usize> = anchors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &a) in sorted.iter().enumerate() {
        if a >= g.n() {
            return Err(GraphError::VertexOutOfRange { vertex: a, n: g.n() });
        }
        index[a] = i;
    }
    for (v, &ix) in index.iter().enumerate() {
        if ix == usize::MAX && g.degree(v) != 2 {
            return Err(GraphError::UnanchoredBranch(v));
        }
    }

    let mut used: HashSet<(usize, usize)> = HashSet::new();
    let mut visited = vec![false; g.n()];
    let mut threads = Vec::new();
    let mut h = Multigraph::new(sorted.len(), std::iter::empty()).expect("empty");
    for &a in &sorted {
        visited[a] = true;
        for &first in g.neighbors(a) {
            if used.contains(&(a.min(first), a.max(first))) {
                continue;
            }
            used.insert((a.min(first), a.max(first)));
            let (mut prev, mut cur) = (a, first);
            let mut interior = Vec::new();
            while index[cur] == usize::MAX {
                visited[cur] = true;
                interior.push(cur);
                let nb = g.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                used.insert((cur.min(next), cur.max(next)));
                prev = cur;
                cur = next;
            }
            h.push_edge(index[a], index[cur]);
            threads.push(Thread {
                start: a,
                interior,
                end: cur,
            });
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| !visited[v]) {
        return Err(GraphError::UnanchoredCycle(v));
    }
    Ok((h, threads))
}

/// `Sub_k(h)` together with the thread realising each edge of `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision {
    pub graph: Graph,
    /// `threads[e]` realises edge `e`; vertex ids `0..n(h)` are kept.
    pub threads: Vec<Thread>,
}

/// Replaces each edge by a path with `k - 1` new interior vertices and each
/// loop by a `k`-cycle. New vertices of edge `e` get ids
/// `n(h) + e(k-1) ..`.
pub fn subdivide_with_threads(h: &Multigraph, k: usize) -> Result<Subdivision, GraphError> {
    if k == 0 {
        return Err(GraphError::ZeroK);
    }
    if (k == 1 && !h.is_simple()) || (k == 2 && h.has_loops()) {
        return Err(GraphError::NotSimple { k });
    }
    let mut next = h.n();
    let mut edges = Vec::new();
    let mut threads = Vec::new();
    for &(u, v) in h.edges() {
        let interior: Vec<usize> = (next..next + k - 1).collect();
        next += k - 1;
        let t = Thread {
            start: u,
            interior,
            end: v,
        };
        let verts = t.vertices();
        edges.extend(verts.windows(2).map(|w| (w[0], w[1])));
        threads.push(t);
    }
    let graph = Graph::new(next, edges).map_err(|_| GraphError::NotSimple { k })?;
    Ok(Subdivision { graph, threads })
}

/// `Sub_k(h)`.
pub fn subdivide(h: &Multigraph, k: usize) -> Result<Graph, GraphError> {
    subdivide_with_threads(h, k).map(|s| s.graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::girth;

    #[test]
    fn subdivision_examples() {
        let sub = subdivide(&Multigraph::loop_at_single_vertex(), 3).unwrap();
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.m(), 3);
        assert_eq!(girth(&sub), Some(3));

        let k2 = Multigraph::new(2, [(0, 1)]).unwrap();
        let p3 = subdivide(&k2, 2).unwrap();
        assert_eq!(p3.n(), 3);
        assert_eq!(p3.degree(2), 2);

        let c3 = Multigraph::from_graph(&Graph::cycle(3));
        let c9 = subdivide(&c3, 3).unwrap();
        assert_eq!((c9.n(), c9.m()), (9, 9));
        assert!((0..9).all(|v| c9.degree(v) == 2));
        assert!(c9.is_connected());
    }

    #[test]
    fn subdivision_rejects_non_simple() {
        let double = Multigraph::new(2, [(0, 1), (0, 1)]).unwrap();
        assert!(subdivide(&double, 1).is_err());
        assert!(subdivide(&double, 2).is_ok());
        assert!(subdivide(&Multigraph::loop_at_single_vertex(), 2).is_err());
        assert!(subdivide(&Multigraph::loop_at_single_vertex(), 0).is_err());
        let k4 = Multigraph::from_graph(&Graph::complete(4));
        assert_eq!(subdivide(&k4, 1).unwrap(), Graph::complete(4));
    }

    #[test]
    fn contraction_examples() {
        let c9 = Graph::cycle(9);
        let (h, threads) = contract_threads(&c9, &[1]).unwrap();
        assert_eq!(h.edges(), &[(0, 0)]);
        assert_eq!(threads.len(), 1);
        assert_eq!(threads[0].len(), 9);
        assert!(matches!(
            contract_threads(&c9, &[]),
            Err(GraphError::UnanchoredCycle(_))
        ));

        let p5 = Graph::path(5);
        let (h, threads) = contract_threads(&p5, &[0, 4]).unwrap();
        assert_eq!(h.edges(), &[(0, 1)]);
        assert_eq!(threads[0].len(), 4);
        assert!(matches!(
            contract_threads(&p5, &[0]),
            Err(GraphError::UnanchoredBranch(4))
        ));

        let k4 = Multigraph::from_graph(&Graph::complete(4));
        let sub = subdivide(&k4, 3).unwrap();
        let (h, threads) = contract_threads(&sub, &[0, 1, 2, 3]).unwrap();
        assert_eq!(h.sorted_edges(), k4.sorted_edges());
        assert!(threads.iter().all(|t| t.len() == 3));
        assert_eq!(threads.len(), 6);
    }
}
