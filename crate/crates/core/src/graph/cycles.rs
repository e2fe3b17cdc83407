use std::collections::{BTreeSet, VecDeque};

use super::{Graph, GraphError};

/// Default vertex bound for exhaustive cycle work.
pub const DEFAULT_CYCLE_VERTEX_BOUND: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleVisit {
    Continue,
    Stop,
}

/// Calls `visit` once per cycle (as a vertex sequence starting at its least
/// vertex, second vertex smaller than last). Returns `false` if stopped.
pub fn for_each_cycle(g: &Graph, mut visit: impl FnMut(&[usize]) -> CycleVisit) -> bool {
    let n = g.n();
    let mut on_path = vec![false; n];
    for s in 0..n {
        let mut path = vec![s];
        on_path[s] = true;
        // (vertex, next neighbour index)
        let mut stack = vec![(s, 0usize)];
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < g.degree(v) {
                let w = g.neighbors(v)[top.1];
                top.1 += 1;
                if w == s {
                    if path.len() >= 3 && path[1] < *path.last().unwrap() && visit(&path) == CycleVisit::Stop {
                        for &p in &path {
                            on_path[p] = false;
                        }
                        return false;
                    }
                } else if w > s && !on_path[w] {
                    on_path[w] = true;
                    path.push(w);
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
                on_path[v] = false;
                path.pop();
            }
        }
    }
    true
}

/// Orders of all cycles, for graphs up to `max_vertices` vertices.
///
/// Uses reachability over (vertex subset, endpoint) states rooted at the
/// least cycle vertex, so cost is `O(2^n n^2)` rather than the cycle count.
pub fn cycle_orders_bounded(g: &Graph, max_vertices: usize) -> Result<BTreeSet<usize>, GraphError> {
    let n = g.n();
    if n > max_vertices || n > 24 {
        return Err(GraphError::TooLarge {
            what: "vertex count for cycle enumeration",
            got: n,
            limit: max_vertices.min(24),
        });
    }
    let adj = g.adjacency_masks();
    let mut orders = BTreeSet::new();
    for s in 0..n {
        // Vertices above s, re-indexed from 0.
        let above: Vec<usize> = (s + 1..n).collect();
        let r = above.len();
        if r < 2 {
            continue;
        }
        let mut reach = vec![0u32; 1 << r]; // reach[mask] bit j: path s..above[j] using exactly mask
        for (j, &v) in above.iter().enumerate() {
            if adj[s] >> v & 1 == 1 {
                reach[1 << j] |= 1 << j;
            }
        }
        for mask in 1usize..(1 << r) {
            let ends = reach[mask];
            if ends == 0 {
                continue;
            }
            let size = mask.count_ones() as usize;
            for j in 0..r {
                if ends >> j & 1 == 0 {
                    continue;
                }
                let v = above[j];
                if size >= 2 && adj[v] >> s & 1 == 1 {
                    orders.insert(size + 1);
                }
                for (t, &w) in above.iter().enumerate() {
                    if mask >> t & 1 == 0 && adj[v] >> w & 1 == 1 {
                        reach[mask | 1 << t] |= 1 << t;
                    }
                }
            }
        }
    }
    Ok(orders)
}

/// [`cycle_orders_bounded`] at [`DEFAULT_CYCLE_VERTEX_BOUND`].
pub fn cycle_orders(g: &Graph) -> Result<BTreeSet<usize>, GraphError> {
    cycle_orders_bounded(g, DEFAULT_CYCLE_VERTEX_BOUND)
}

fn bfs_tree(g: &Graph, root: usize) -> (Vec<usize>, Vec<usize>) {
    let mut dist = vec![usize::MAX; g.n()];
    let mut parent = vec![usize::MAX; g.n()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    (dist, parent)
}

/// A shortest cycle as a vertex sequence, or `None` for forests.
pub fn shortest_cycle(g: &Graph) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for root in 0..g.n() {
        let (dist, parent) = bfs_tree(g, root);
        for &(u, w) in g.edges() {
            if dist[u] == usize::MAX || parent[u] == w || parent[w] == u {
                continue;
            }
            let len = dist[u] + dist[w] + 1;
            if best.as_ref().is_some_and(|b| b.len() <= len) {
                continue;
            }
            let climb = |mut x: usize| {
                let mut p = vec![x];
                while x != root {
                    x = parent[x];
                    p.push(x);
                }
                p
            };
            let (pu, pw) = (climb(u), climb(w));
            // Keep only genuine cycles: the two tree paths meet at the root only.
            let inner_u: std::collections::HashSet<usize> = pu[..pu.len() - 1].iter().copied().collect();
            if pw[..pw.len() - 1].iter().any(|x| inner_u.contains(x)) {
                continue;
            }
            let mut cycle: Vec<usize> = pu.into_iter().rev().collect();
            cycle.extend(pw[..pw.len() - 1].iter());
            best = Some(cycle);
        }
    }
    best
}

/// Length of a shortest cycle; `None` means infinite (forest).
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for root in 0..g.n() {
        let (dist, parent) = bfs_tree(g, root);
        for &(u, w) in g.edges() {
            if dist[u] == usize::MAX || parent[u] == w || parent[w] == u {
                continue;
            }
            let len = dist[u] + dist[w] + 1;
            best = Some(best.map_or(len, |b: usize| b.min(len)));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{subdivide, Multigraph};
    use proptest::prelude::*;

    fn orders_by_listing(g: &Graph) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for_each_cycle(g, |c| {
            out.insert(c.len());
            CycleVisit::Continue
        });
        out
    }

    #[test]
    fn examples() {
        assert!(cycle_orders(&Graph::path(6)).unwrap().is_empty());
        assert_eq!(girth(&Graph::path(6)), None);
        assert_eq!(cycle_orders(&Graph::complete(4)).unwrap(), BTreeSet::from([3, 4]));
        assert_eq!(girth(&Graph::complete(4)), Some(3));
        assert_eq!(cycle_orders(&Graph::cycle(9)).unwrap(), BTreeSet::from([9]));
        assert!(cycle_orders(&Graph::cycle(17)).is_err());
        assert_eq!(
            cycle_orders_bounded(&Graph::cycle(17), 20).unwrap(),
            BTreeSet::from([17])
        );
    }

    #[test]
    fn k4_cycle_count() {
        // 4 triangles + 3 four-cycles.
        let mut count = 0;
        for_each_cycle(&Graph::complete(4), |_| {
            count += 1;
            CycleVisit::Continue
        });
        assert_eq!(count, 7);
    }

    #[test]
    fn shortest_cycle_witness() {
        let g = Graph::new(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (2, 6), (6, 3)]).unwrap();
        let c = shortest_cycle(&g).unwrap();
        assert_eq!(c.len(), 3);
        for i in 0..c.len() {
            assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
        }
    }

    #[test]
    fn subdivision_girth() {
        let theta = Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap();
        for k in 2..6 {
            let g = subdivide(&theta, k).unwrap();
            assert!(girth(&g).unwrap() >= k * theta.girth().unwrap());
        }
    }

    proptest! {
        #[test]
        fn dp_orders_match_listing(mask in 0u32..(1 << 21)) {
            let pairs: Vec<(usize, usize)> = (0..7).flat_map(|u| (u + 1..7).map(move |v| (u, v))).collect();
            let g = Graph::new(7, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
            let orders = cycle_orders(&g).unwrap();
            prop_assert_eq!(&orders, &orders_by_listing(&g));
            prop_assert_eq!(girth(&g), orders.iter().next().copied());
            prop_assert_eq!(shortest_cycle(&g).map(|c| c.len()), girth(&g));
        }
    }
}
