use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};

use super::{BlockClass, BlockReport, RecognitionError, RecognitionReport, Violation, ViolationKind};
use crate::graph::{
    block_decomposition, contract_threads, delete_vertices, girth, induced_subgraph, shortest_cycle, Block,
    BlockDecomposition, Graph, Multigraph, Thread,
};

/// A block recognised as `Sub_k(h)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdivisionBlock {
    pub h: Multigraph,
    /// Vertex `i` of `h` is host vertex `h_vertices[i]` (ascending).
    pub h_vertices: Vec<usize>,
    /// `threads[e]` realises edge `e` of `h`, oriented from
    /// `h_vertices[h.edges()[e].0]`, in host labels.
    pub threads: Vec<Thread>,
}

impl SubdivisionBlock {
    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.h_vertices.binary_search(&v).ok()
    }

    /// True iff subdividing `h` with these threads gives exactly `block`.
    pub fn reproduces(&self, block: &Block, k: usize) -> bool {
        let mut edges = BTreeSet::new();
        let mut seen: BTreeSet<usize> = self.h_vertices.iter().copied().collect();
        for (e, t) in self.threads.iter().enumerate() {
            let (a, b) = self.h.edges()[e];
            if t.len() != k || t.start != self.h_vertices[a] || t.end != self.h_vertices[b] {
                return false;
            }
            for &v in &t.interior {
                if !seen.insert(v) {
                    return false;
                }
            }
            for w in t.vertices().windows(2) {
                if !edges.insert((w[0].min(w[1]), w[0].max(w[1]))) {
                    return false;
                }
            }
        }
        let expected: BTreeSet<(usize, usize)> = block.edges.iter().copied().collect();
        let vertices: BTreeSet<usize> = block.vertices.iter().copied().collect();
        edges == expected && seen == vertices
    }
}

/// Vertices of a cycle block in traversal order from its least vertex
/// towards the smaller neighbour.
fn cycle_sequence(g: &Graph) -> Vec<usize> {
    let mut seq = vec![0];
    let mut prev = usize::MAX;
    let mut cur = 0;
    loop {
        let next = *g.neighbors(cur).iter().filter(|&&w| w != prev).min().unwrap();
        if next == 0 {
            return seq;
        }
        seq.push(next);
        prev = cur;
        cur = next;
    }
}

/// Recovers `H` with `block = Sub_k(H)` and `anchors ⊆ V(H)`.
///
/// With anchors, every maximal degree-2 path between anchors must have
/// length divisible by `k`, and `H` gets every `k`-th vertex along it. With
/// no anchors the block is a cycle; its order must be divisible by `k` and
/// `H` takes positions `shift, shift + k, ...` of [`cycle_sequence`].
pub fn recover_subdivision(
    g: &Graph,
    block: &Block,
    anchors: &[usize],
    k: usize,
    shift: usize,
) -> Result<SubdivisionBlock, Violation> {
    let local = induced_subgraph(g, &block.vertices).expect("block vertices are valid");
    let to_host = |v: usize| local.original[v];
    let anchors_local: Vec<usize> = if anchors.is_empty() {
        let seq = cycle_sequence(&local.graph);
        if !seq.len().is_multiple_of(k) {
            return Err(Violation::new(
                ViolationKind::Cycle,
                seq.iter().map(|&v| to_host(v)).collect(),
                format!("order {} is not divisible by {k}", seq.len()),
            ));
        }
        (shift % k..seq.len()).step_by(k).map(|i| seq[i]).collect()
    } else {
        anchors
            .iter()
            .map(|&a| local.to_local(a).expect("anchor in block"))
            .collect()
    };
    let (_, threads) = contract_threads(&local.graph, &anchors_local).map_err(|e| {
        Violation::new(
            ViolationKind::Block,
            block.vertices.clone(),
            format!("not a subdivision: {e}"),
        )
    })?;

    let mut pieces: Vec<Vec<usize>> = Vec::new();
    for t in &threads {
        let verts: Vec<usize> = t.vertices().into_iter().map(to_host).collect();
        if t.len() % k != 0 {
            return Err(Violation::new(
                ViolationKind::Thread,
                verts,
                format!("length {} is not divisible by {k}", t.len()),
            ));
        }
        for j in 0..t.len() / k {
            pieces.push(verts[j * k..=(j + 1) * k].to_vec());
        }
    }
    let h_vertices: Vec<usize> = pieces
        .iter()
        .flat_map(|p| [p[0], p[k]])
        .collect::<BTreeSet<usize>>()
        .into_iter()
        .collect();
    for p in pieces.iter_mut() {
        if p[0] > p[k] || (p[0] == p[k] && p[1] > p[k - 1]) {
            p.reverse();
        }
    }
    pieces.sort();
    let idx = |v: usize| h_vertices.binary_search(&v).unwrap();
    let h = Multigraph::new(h_vertices.len(), pieces.iter().map(|p| (idx(p[0]), idx(p[k])))).unwrap();
    let threads = pieces
        .into_iter()
        .map(|p| Thread {
            start: p[0],
            interior: p[1..k].to_vec(),
            end: p[k],
        })
        .collect();
    Ok(SubdivisionBlock { h, h_vertices, threads })
}

pub(crate) fn required_anchors(decomp: &BlockDecomposition, block: &Block, with_cutvertices: bool) -> Vec<usize> {
    block
        .vertices
        .iter()
        .copied()
        .filter(|&v| block.degree_in_block(v) >= 3 || (with_cutvertices && decomp.is_cutvertex(v)))
        .collect()
}

/// Every non-trivial block is `Sub_3(H)` with all its cutvertices in `V(H)`.
pub fn recognize_h3(g: &Graph) -> RecognitionReport {
    let decomp = block_decomposition(g);
    let blocks = decomp
        .blocks
        .iter()
        .enumerate()
        .map(|(id, b)| {
            let class = if b.is_trivial() {
                BlockClass::Trivial
            } else {
                let anchors = required_anchors(&decomp, b, true);
                match recover_subdivision(g, b, &anchors, 3, 0) {
                    Ok(s) => BlockClass::Subdivision(s),
                    Err(v) => BlockClass::Violation(v),
                }
            };
            BlockReport {
                id,
                vertices: b.vertices.clone(),
                class,
            }
        })
        .collect();
    RecognitionReport::assemble("H3".into(), 3, blocks)
}

/// Longest path (in vertices) of a tree given by its vertex set in `g`.
fn tree_longest_path(g: &Graph, vertices: &[usize]) -> usize {
    let inside: BTreeSet<usize> = vertices.iter().copied().collect();
    let bfs = |s: usize| {
        let mut dist = std::collections::HashMap::from([(s, 1usize)]);
        let mut queue = VecDeque::from([s]);
        let mut last = (s, 1);
        while let Some(u) = queue.pop_front() {
            let d = dist[&u];
            if d > last.1 {
                last = (u, d);
            }
            for &w in g.neighbors(u) {
                if inside.contains(&w) && !dist.contains_key(&w) {
                    dist.insert(w, d + 1);
                    queue.push_back(w);
                }
            }
        }
        last
    };
    let (far, _) = bfs(vertices[0]);
    bfs(far).1
}

/// Checks that every component of `g - V(H)` meeting `V(B) - V(H)` is a
/// tree without a k-path.
fn attached_components_ok(g: &Graph, block: &Block, s: &SubdivisionBlock, k: usize) -> Result<(), Violation> {
    let rest = delete_vertices(g, &s.h_vertices);
    for comp in rest.graph.components() {
        let host: Vec<usize> = comp.iter().map(|&v| rest.original[v]).collect();
        if !host.iter().any(|&v| block.contains(v)) {
            continue;
        }
        let edges = comp.iter().map(|&v| rest.graph.degree(v)).sum::<usize>() / 2;
        if edges + 1 != comp.len() {
            return Err(Violation::new(ViolationKind::Component, host, "contains a cycle"));
        }
        let longest = tree_longest_path(g, &host);
        if longest >= k {
            return Err(Violation::new(
                ViolationKind::Component,
                host,
                format!("tree with a path on {longest} >= {k} vertices"),
            ));
        }
    }
    Ok(())
}

/// Odd `k >= 3`: every non-trivial block `B` is `Sub_k(H)` and every
/// component of `g - V(H)` meeting `V(B) - V(H)` is a tree without a k-path.
/// Cycle blocks try all `k` placements of `V(H)`. The girth condition is
/// reported in `short_cycle`, not folded into the verdict.
pub fn recognize_hk_prime(g: &Graph, k: usize) -> Result<RecognitionReport, RecognitionError> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(RecognitionError::InvalidK(k));
    }
    let decomp = block_decomposition(g);
    let blocks = decomp
        .blocks
        .iter()
        .enumerate()
        .map(|(id, b)| {
            let class = if b.is_trivial() {
                BlockClass::Trivial
            } else {
                let anchors = required_anchors(&decomp, b, false);
                let shifts = if anchors.is_empty() { k } else { 1 };
                let mut first_failure = None;
                let mut found = None;
                for shift in 0..shifts {
                    let attempt = recover_subdivision(g, b, &anchors, k, shift)
                        .and_then(|s| attached_components_ok(g, b, &s, k).map(|_| s));
                    match attempt {
                        Ok(s) => {
                            found = Some(s);
                            break;
                        }
                        Err(v) => {
                            let structural = v.kind != ViolationKind::Component;
                            first_failure.get_or_insert(v);
                            if structural {
                                break;
                            }
                        }
                    }
                }
                match found {
                    Some(s) => BlockClass::Subdivision(s),
                    None => BlockClass::Violation(first_failure.unwrap()),
                }
            };
            BlockReport {
                id,
                vertices: b.vertices.clone(),
                class,
            }
        })
        .collect();
    let mut report = RecognitionReport::assemble(format!("H'{k}"), k, blocks);
    if girth(g).is_some_and(|c| c < k) {
        report.short_cycle = shortest_cycle(g);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::subdivide;

    fn with_pendants(base: &Graph, attach: &[(usize, usize)]) -> Graph {
        // (host vertex, pendant path order)
        let mut edges: Vec<(usize, usize)> = base.edges().to_vec();
        let mut n = base.n();
        for &(v, len) in attach {
            let mut prev = v;
            for _ in 0..len {
                edges.push((prev, n));
                prev = n;
                n += 1;
            }
        }
        Graph::new(n, edges).unwrap()
    }

    #[test]
    fn h3_examples() {
        let r = recognize_h3(&Graph::cycle(9));
        assert!(r.member);
        match &r.blocks[0].class {
            BlockClass::Subdivision(s) => {
                assert_eq!(s.h_vertices, vec![0, 3, 6]);
                assert!(s.reproduces(&block_decomposition(&Graph::cycle(9)).blocks[0], 3));
            }
            other => panic!("{other:?}"),
        }
        let bad = with_pendants(&Graph::cycle(9), &[(0, 1), (1, 1)]);
        let r = recognize_h3(&bad);
        assert!(!r.member);
        assert_eq!(r.witness.unwrap().kind, ViolationKind::Thread);
        let tree = Graph::new(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert!(recognize_h3(&tree).member);
        assert!(!recognize_h3(&Graph::complete(4)).member);
        assert!(!recognize_h3(&Graph::cycle(5)).member);
    }

    #[test]
    fn subdivisions_are_recovered() {
        let k4 = Multigraph::from_graph(&Graph::complete(4));
        let theta = Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap();
        let bowtie = Multigraph::new(1, [(0, 0), (0, 0)]).unwrap();
        for h in [k4, theta, bowtie] {
            for k in [3, 5] {
                let g = subdivide(&h, k).unwrap();
                let d = block_decomposition(&g);
                let r = recognize_hk_prime(&g, k).unwrap();
                assert!(r.member, "{h:?} k={k}");
                for (b, rep) in d.blocks.iter().zip(&r.blocks) {
                    if let BlockClass::Subdivision(s) = &rep.class {
                        assert!(s.reproduces(b, k));
                    }
                }
                assert_eq!(recognize_h3(&g).member, k == 3);
            }
        }
    }

    #[test]
    fn hk_prime_examples() {
        let g = with_pendants(&Graph::cycle(15), &[(0, 1)]);
        let r = recognize_hk_prime(&g, 5).unwrap();
        assert!(r.member);
        match &r.blocks.iter().find(|b| b.vertices.len() == 15).unwrap().class {
            BlockClass::Subdivision(s) => assert_eq!(s.h_vertices, vec![0, 5, 10]),
            other => panic!("{other:?}"),
        }
        assert!(r.short_cycle.is_none());

        let bad = with_pendants(&Graph::cycle(9), &[(0, 2), (1, 2)]);
        assert!(!recognize_hk_prime(&bad, 3).unwrap().member);

        let forest = Graph::new(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        assert!(recognize_hk_prime(&forest, 5).unwrap().member);

        let tri = recognize_hk_prime(&Graph::complete(3), 5).unwrap();
        assert!(!tri.member);
        assert_eq!(tri.short_cycle.as_ref().map(Vec::len), Some(3));
        assert!(recognize_hk_prime(&forest, 4).is_err());
        assert!(recognize_hk_prime(&forest, 1).is_err());
    }

    #[test]
    fn text_report() {
        let text = recognize_h3(&Graph::cycle(9)).to_text();
        assert_eq!(
            text,
            "block 0: sub3 of multigraph on [0, 3, 6] edges 0-3 0-6 3-6\nverdict: member\n"
        );
    }
}
