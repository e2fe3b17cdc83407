//! Canonical labelling for graphs on at most 16 vertices.
//!
//! Colour refinement to an equitable ordered partition, then a search that
//! individualises each vertex of the first non-singleton cell in turn. Each
//! discrete partition is a relabelling; the canonical one maximises the
//! upper-triangle adjacency code. Interchangeable twins in a cell are
//! branched on only once.

use kpath_core::Graph;

pub const MAX_CANON_VERTICES: usize = 16;

/// Upper triangle in column order `(0,1), (0,2), (1,2), (0,3), ...`, most
/// significant bit first.
fn code(adj: &[u16], order: &[usize]) -> u128 {
    let n = order.len();
    let mut c = 0u128;
    for j in 1..n {
        for i in 0..j {
            c <<= 1;
            if adj[order[i]] >> order[j] & 1 == 1 {
                c |= 1;
            }
        }
    }
    c
}

/// Splits cells by neighbour counts into each splitter until stable.
/// Sub-cells are ordered by count, so the result does not depend on labels.
fn refine(adj: &[u16], cells: &mut Vec<Vec<usize>>) {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter: u16 = cells[s].iter().fold(0, |m, &v| m | 1 << v);
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> =
                    cell.iter().map(|&v| ((adj[v] & splitter).count_ones(), v)).collect();
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            if next.len() != cells.len() {
                changed = true;
                *cells = next;
            }
            s += 1;
        }
        if !changed {
            return;
        }
    }
}

fn twins(adj: &[u16], u: usize, v: usize) -> bool {
    let mask = !(1u16 << u | 1u16 << v);
    adj[u] & mask == adj[v] & mask
}

fn search(adj: &[u16], mut cells: Vec<Vec<usize>>, best: &mut Option<(u128, Vec<usize>)>) {
    refine(adj, &mut cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let c = code(adj, &order);
        if best.as_ref().is_none_or(|(b, _)| c > *b) {
            *best = Some((c, order));
        }
        return;
    };
    let cell = cells[target].clone();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&u| twins(adj, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = cells.clone();
        let rest: Vec<usize> = cell.iter().copied().filter(|&w| w != v).collect();
        next.splice(target..=target, [vec![v], rest]);
        search(adj, next, best);
    }
}

/// Canonical relabelling: `order[i]` is the vertex placed at position `i`.
pub fn canonical_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    assert!(
        n <= MAX_CANON_VERTICES,
        "canonical form supports at most {MAX_CANON_VERTICES} vertices"
    );
    if n == 0 {
        return Vec::new();
    }
    let adj: Vec<u16> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, &w| m | 1 << w))
        .collect();
    // Start from degree classes so the first refinement pass is cheap.
    let mut by_degree: Vec<(usize, usize)> = (0..n).map(|v| (g.degree(v), v)).collect();
    by_degree.sort_unstable();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (d, v) in by_degree {
        match cells.last_mut() {
            Some(c) if g.degree(c[0]) == d => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = None;
    search(&adj, cells, &mut best);
    best.expect("at least one leaf").1
}

/// The canonical representative: isomorphic graphs map to equal graphs.
pub fn canonical_form(g: &Graph) -> Graph {
    let order = canonical_order(g);
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    Graph::new(g.n(), g.edges().iter().map(|&(u, v)| (pos[u], pos[v]))).expect("relabelling keeps the graph simple")
}

/// Isomorphism-invariant key: vertex count and canonical adjacency code.
pub fn canonical_key(g: &Graph) -> (usize, u128) {
    let order = canonical_order(g);
    let adj: Vec<u16> = (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, &w| m | 1 << w))
        .collect();
    (g.n(), code(&adj, &order))
}

/// Single-line canonical edge list, e.g. `4: 0-3 1-3 2-3`.
pub fn canonical_edge_list(g: &Graph) -> String {
    let c = canonical_form(g);
    let mut out = format!("{}:", c.n());
    for &(u, v) in c.edges() {
        out.push_str(&format!(" {u}-{v}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        Graph::new(g.n(), g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap()
    }

    #[test]
    fn invariant_under_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let petersen = Graph::new(
            10,
            (0..5)
                .map(|i| (i, (i + 1) % 5))
                .chain((0..5).map(|i| (i, i + 5)))
                .chain((0..5).map(|i| (5 + i, 5 + (i + 2) % 5))),
        )
        .unwrap();
        let samples = [
            Graph::empty(9),
            Graph::complete(8),
            Graph::cycle(10),
            Graph::star(9),
            Graph::complete_bipartite(4, 5),
            petersen,
            Graph::new(8, [(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap(),
        ];
        for g in samples {
            let c = canonical_form(&g);
            for _ in 0..20 {
                let mut perm: Vec<usize> = (0..g.n()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&relabel(&g, &perm)), c);
            }
        }
    }

    #[test]
    fn separates_non_isomorphic() {
        // same degree sequence: C6 vs two triangles
        let c6 = Graph::cycle(6);
        let two = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_ne!(canonical_key(&c6), canonical_key(&two));
        assert_eq!(canonical_edge_list(&Graph::star(3)), "4: 0-3 1-3 2-3");
    }
}
