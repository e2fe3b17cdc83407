use std::collections::VecDeque;

use super::SolveError;
use crate::Multigraph;

/// Injective `f: V(h) -> E(h)` with `u` incident to `f(u)`, returned as
/// `f[u]` = edge id. Takes the least edge `e` on a cycle, a BFS spanning
/// tree of `h - e` rooted at the first endpoint `r` of `e`, sets
/// `f(r) = e` and maps every other vertex to the edge towards its parent.
pub fn matching_edge_assignment(h: &Multigraph) -> Result<Vec<usize>, SolveError> {
    if h.n() == 0 || !h.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let e = h.first_cycle_edge().ok_or(SolveError::Acyclic)?;
    let r = h.edges()[e].0;
    let mut f = vec![usize::MAX; h.n()];
    f[r] = e;
    let mut seen = vec![false; h.n()];
    seen[r] = true;
    let mut queue = VecDeque::from([r]);
    while let Some(u) = queue.pop_front() {
        for id in h.incident_edges(u) {
            if id == e {
                continue;
            }
            let w = h.other_end(id, u);
            if !seen[w] {
                seen[w] = true;
                f[w] = id;
                queue.push_back(w);
            }
        }
    }
    debug_assert!(f.iter().all(|&x| x != usize::MAX));
    Ok(f)
}

/// Given a matching `m` (edge ids) of the connected multigraph `h` that
/// contains a cycle, and vertices `extra` left unmatched by `m`, finds an
/// injective map from `m ∪ extra` to `E(h) - m` such that every matched
/// edge shares an end with its image and every extra vertex is incident to
/// its image. Works by contracting `m` and assigning edges in the
/// contracted multigraph.
pub fn matching_partner_assignment(
    h: &Multigraph,
    m: &[usize],
    extra: &[usize],
) -> Result<(Vec<usize>, Vec<usize>), SolveError> {
    let n = h.n();
    let mut class = vec![usize::MAX; n];
    for (i, &e) in m.iter().enumerate() {
        let (u, v) = h.edges()[e];
        if u == v || class[u] != usize::MAX || class[v] != usize::MAX {
            return Err(SolveError::Stuck(format!("edge set {m:?} is not a matching")));
        }
        class[u] = i;
        class[v] = i;
    }
    let mut next = m.len();
    for c in class.iter_mut().filter(|c| **c == usize::MAX) {
        *c = next;
        next += 1;
    }
    for &x in extra {
        if class[x] < m.len() {
            return Err(SolveError::Stuck(format!("vertex {x} is matched")));
        }
    }
    let in_m: Vec<bool> = (0..h.m()).map(|e| m.contains(&e)).collect();
    let kept: Vec<usize> = (0..h.m()).filter(|&e| !in_m[e]).collect();
    let contracted = Multigraph::new(
        next,
        kept.iter().map(|&e| {
            let (u, v) = h.edges()[e];
            (class[u], class[v])
        }),
    )
    .expect("classes are in range");
    let f = matching_edge_assignment(&contracted)?;
    let image = |c: usize| kept[f[c]];
    Ok((
        (0..m.len()).map(image).collect(),
        extra.iter().map(|&x| image(class[x])).collect(),
    ))
}
