use std::collections::VecDeque;

use crate::oracle::has_kpath_avoiding;
use crate::Graph;

/// Working copy of the input: a subgraph on the original vertex ids.
/// Deleted vertices stay in the id range as isolated, dead vertices.
#[derive(Debug, Clone)]
pub(crate) struct Work {
    pub g: Graph,
    pub alive: Vec<bool>,
    pub k: usize,
}

impl Work {
    pub fn new(g: &Graph, k: usize) -> Self {
        Work {
            g: g.clone(),
            alive: vec![true; g.n()],
            k,
        }
    }

    pub fn remove_vertices(&mut self, vs: &[usize]) {
        for &v in vs {
            self.alive[v] = false;
        }
        let alive = &self.alive;
        let edges: Vec<(usize, usize)> = self
            .g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| alive[u] && alive[v])
            .collect();
        self.g = Graph::new(self.g.n(), edges).expect("subgraph of a simple graph");
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.g = self.g.without_edge(u, v);
    }

    /// Live components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.g.components().into_iter().filter(|c| self.alive[c[0]]).collect()
    }

    /// Some k-path inside `region` (all other vertices blocked).
    pub fn kpath_within(&self, region: &[usize]) -> Option<Vec<usize>> {
        let mut blocked = vec![true; self.g.n()];
        for &v in region {
            blocked[v] = !self.alive[v];
        }
        has_kpath_avoiding(&self.g, self.k, &blocked)
    }

    /// Deletes every live component without a k-path. These contribute
    /// nothing to either certificate.
    pub fn prune(&mut self) {
        let dead: Vec<usize> = self
            .components()
            .into_iter()
            .filter(|c| self.kpath_within(c).is_none())
            .flatten()
            .collect();
        if !dead.is_empty() {
            self.remove_vertices(&dead);
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.alive.iter().any(|&a| a)
    }

    /// Vertices reachable from `start` without entering `avoid`.
    pub fn reach(&self, start: usize, avoid: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.g.n()];
        for &a in avoid {
            seen[a] = true;
        }
        seen[start] = true;
        let mut out = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in self.g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                    queue.push_back(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Number of edges with both ends in the sorted vertex set.
    pub fn edges_within(&self, vs: &[usize]) -> usize {
        vs.iter()
            .map(|&v| {
                self.g
                    .neighbors(v)
                    .iter()
                    .filter(|w| vs.binary_search(w).is_ok())
                    .count()
            })
            .sum::<usize>()
            / 2
    }

    pub fn is_tree(&self, vs: &[usize]) -> bool {
        self.edges_within(vs) + 1 == vs.len()
    }
}
