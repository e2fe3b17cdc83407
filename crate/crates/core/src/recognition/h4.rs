use std::collections::VecDeque;

use super::subdivision::{recover_subdivision, required_anchors, SubdivisionBlock};
use super::{BlockClass, BlockReport, RecognitionReport, TpBlock, Violation, ViolationKind};
use crate::graph::{block_decomposition, Block, Graph};

/// Recognises `block` as `T(p)`. For `T(1)` (a triangle) any two vertices
/// can serve as apexes; vertices in `prefer` are chosen first.
pub fn tp_structure(block: &Block, prefer: &[usize]) -> Option<TpBlock> {
    let nb = block.vertices.len();
    if nb < 3 {
        return None;
    }
    let p = nb - 2;
    if block.edges.len() != 2 * p + 1 {
        return None;
    }
    let deg: Vec<usize> = block.vertices.iter().map(|&v| block.degree_in_block(v)).collect();
    let has = |a: usize, b: usize| block.edges.binary_search(&(a.min(b), a.max(b))).is_ok();
    let mut apex: Vec<usize> = if p == 1 {
        let mut order = block.vertices.clone();
        order.sort_by_key(|v| (!prefer.contains(v), *v));
        order.truncate(2);
        order
    } else {
        (0..nb)
            .filter(|&i| deg[i] == p + 1)
            .map(|i| block.vertices[i])
            .collect()
    };
    if apex.len() != 2 || !has(apex[0], apex[1]) {
        return None;
    }
    apex.sort_unstable();
    let fan: Vec<usize> = block.vertices.iter().copied().filter(|v| !apex.contains(v)).collect();
    let shaped = fan
        .iter()
        .all(|&z| block.degree_in_block(z) == 2 && has(z, apex[0]) && has(z, apex[1]));
    shaped.then_some(TpBlock {
        p,
        apex: [apex[0], apex[1]],
        fan,
    })
}

/// A cycle of the block whose image in the recovered `H` is odd.
fn odd_cycle_witness(s: &SubdivisionBlock) -> Option<Vec<usize>> {
    let h = &s.h;
    let n = h.n();
    let mut color = vec![u8::MAX; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for e in h.incident_edges(u) {
                let w = h.other_end(e, u);
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    parent[w] = Some(e);
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    let (conflict, &(u, v)) = h.edges().iter().enumerate().find(|(_, &(a, b))| color[a] == color[b])?;
    // Host vertices walking thread `e` from H-vertex `from`, excluding the far end.
    let walk = |e: usize, from: usize| -> Vec<usize> {
        let t = &s.threads[e];
        let mut seq = vec![s.h_vertices[from]];
        seq.extend(t.interior_from(s.h_vertices[from]));
        seq
    };
    let (mut a, mut b) = (u, v);
    let mut up_a = Vec::new();
    let mut up_b = Vec::new();
    while a != b {
        if depth[a] >= depth[b] {
            let e = parent[a].unwrap();
            up_a.extend(walk(e, a));
            a = h.other_end(e, a);
        } else {
            let e = parent[b].unwrap();
            up_b.push((e, b));
            b = h.other_end(e, b);
        }
    }
    let mut cycle = up_a;
    for &(e, child) in up_b.iter().rev() {
        cycle.extend(walk(e, h.other_end(e, child)));
    }
    cycle.extend(walk(conflict, v));
    Some(cycle)
}

/// Classifies each non-trivial block by the first applicable clause:
/// (i) `Sub_2(H)` with `H` bipartite and cutvertices in `V(H)`;
/// (ii) a `K_4` endblock; (iii) a `T(2)` endblock whose cutvertex, if any,
/// has degree 2 in the block; (iv) `T(p)` with at most two cutvertices, each
/// of degree `p + 1` in the block, and when there are two, one of them has
/// only leaves as neighbours outside the block.
pub fn recognize_h4(g: &Graph) -> RecognitionReport {
    let decomp = block_decomposition(g);
    let blocks = decomp
        .blocks
        .iter()
        .enumerate()
        .map(|(id, b)| {
            let class = if b.is_trivial() {
                BlockClass::Trivial
            } else {
                classify(g, &decomp, b)
            };
            BlockReport {
                id,
                vertices: b.vertices.clone(),
                class,
            }
        })
        .collect();
    RecognitionReport::assemble("H4".into(), 4, blocks)
}

fn classify(g: &Graph, decomp: &crate::graph::BlockDecomposition, b: &Block) -> BlockClass {
    let cut: Vec<usize> = b.vertices.iter().copied().filter(|&v| decomp.is_cutvertex(v)).collect();
    let anchors = required_anchors(decomp, b, true);
    let clause_i = match recover_subdivision(g, b, &anchors, 2, 0) {
        Ok(s) if s.h.bipartition().is_some() => return BlockClass::Subdivision(s),
        Ok(s) => Violation::new(
            ViolationKind::Cycle,
            odd_cycle_witness(&s).unwrap_or_else(|| b.vertices.clone()),
            "order is 2 mod 4, so the recovered multigraph is not bipartite",
        ),
        Err(v) => v,
    };
    if b.vertices.len() == 4 && b.edges.len() == 6 {
        if cut.len() <= 1 {
            return BlockClass::K4Endblock;
        }
        return BlockClass::Violation(Violation::new(
            ViolationKind::Cutvertex,
            cut,
            "K4 block with more than one cutvertex",
        ));
    }
    let Some(tp) = tp_structure(b, &cut) else {
        return BlockClass::Violation(clause_i);
    };
    if tp.p == 2 && cut.len() <= 1 && cut.iter().all(|&x| b.degree_in_block(x) == 2) {
        return BlockClass::T2Endblock(tp);
    }
    if cut.len() > 2 {
        return BlockClass::Violation(Violation::new(
            ViolationKind::Cutvertex,
            cut,
            format!("T({}) block with more than two cutvertices", tp.p),
        ));
    }
    if let Some(&bad) = cut.iter().find(|&&x| b.degree_in_block(x) != tp.p + 1) {
        return BlockClass::Violation(Violation::new(
            ViolationKind::Cutvertex,
            vec![bad],
            format!("cutvertex of degree {} in T({}) block", b.degree_in_block(bad), tp.p),
        ));
    }
    if cut.len() == 2 {
        let leaves_only = |x: usize| {
            g.neighbors(x)
                .iter()
                .filter(|w| !b.contains(**w))
                .all(|&w| g.degree(w) == 1)
        };
        if !cut.iter().any(|&x| leaves_only(x)) {
            return BlockClass::Violation(Violation::new(
                ViolationKind::Cutvertex,
                cut,
                format!("neither cutvertex of the T({}) block has only leaves outside it", tp.p),
            ));
        }
    }
    BlockClass::Tp(tp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure2() -> [Graph; 3] {
        [
            // triangle with a pendant vertex at each corner
            Graph::new(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap(),
            // triangle with pendant 2-paths at two corners
            Graph::new(7, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (1, 5), (5, 6)]).unwrap(),
            // triangle 0 1 2, pendant at 2, vertex 3 joined to 0 and 1, pendant at 3
            Graph::new(7, [(0, 1), (1, 2), (0, 2), (2, 4), (0, 3), (1, 3), (3, 5)]).unwrap(),
        ]
    }

    #[test]
    fn examples() {
        let r = recognize_h4(&Graph::complete(4));
        assert!(r.member);
        assert_eq!(r.blocks[0].class, BlockClass::K4Endblock);

        let r = recognize_h4(&Graph::cycle(8));
        assert!(r.member);
        match &r.blocks[0].class {
            BlockClass::Subdivision(s) => assert_eq!(s.h.n(), 4),
            other => panic!("{other:?}"),
        }
        assert!(!recognize_h4(&Graph::cycle(6)).member);
        assert!(recognize_h4(&Graph::cycle(3)).member);
        assert!(recognize_h4(&Graph::cycle(4)).member);
        for g in figure2() {
            assert!(!recognize_h4(&g).member, "{g:?}");
        }
    }

    #[test]
    fn tp_blocks() {
        // T(3): apex 0 1, fan 2 3 4; two leaves at 0, a leaf at 1.
        let g = Graph::new(
            8,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 4),
                (0, 5),
                (0, 6),
                (1, 7),
            ],
        )
        .unwrap();
        let r = recognize_h4(&g);
        assert!(r.member);
        let tp = r.blocks.iter().find_map(|b| match &b.class {
            BlockClass::Tp(t) => Some(t.clone()),
            _ => None,
        });
        assert_eq!(
            tp,
            Some(TpBlock {
                p: 3,
                apex: [0, 1],
                fan: vec![2, 3, 4]
            })
        );

        // Same block, but 1 carries a 2-path and 0 carries a 2-path: fails.
        let h = Graph::new(
            9,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 4),
                (0, 5),
                (5, 6),
                (1, 7),
                (7, 8),
            ],
        )
        .unwrap();
        assert_eq!(recognize_h4(&h).witness.unwrap().kind, ViolationKind::Cutvertex);

        // K4 - e with a pendant at a degree-2 vertex is clause (iii).
        let t2 = Graph::new(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4)]).unwrap();
        assert!(matches!(recognize_h4(&t2).blocks[0].class, BlockClass::T2Endblock(_)));
        // ... at a degree-3 vertex it is clause (iv).
        let t2b = Graph::new(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (0, 4)]).unwrap();
        assert!(matches!(recognize_h4(&t2b).blocks[0].class, BlockClass::Tp(_)));
    }

    #[test]
    fn odd_h_witness_is_a_cycle() {
        // Theta with paths of length 2, 2, 4: a 6-cycle exists, so H has a triangle.
        let g = Graph::new(7, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 5), (5, 6), (6, 1)]).unwrap();
        let r = recognize_h4(&g);
        let w = r.witness.unwrap();
        assert_eq!(w.kind, ViolationKind::Cycle);
        assert_eq!(w.vertices.len() % 4, 2);
        for i in 0..w.vertices.len() {
            assert!(g.has_edge(w.vertices[i], w.vertices[(i + 1) % w.vertices.len()]));
        }
    }
}
