use std::collections::BTreeSet;

use super::assign::matching_partner_assignment;
use super::bipartite::{bipartite_matching, BipartiteCertificate};
use super::forest::tree_rule;
use super::half::pair_path;
use super::work::Work;
use super::{ReductionRule, ReductionStep, ReductionTrace, Solution, SolveError};
use crate::graph::{block_decomposition, BlockDecomposition, Thread};
use crate::oracle::KPath;
use crate::recognition::{recognize_h4, BlockClass, RecognitionReport, SubdivisionBlock};
use crate::{Graph, Multigraph};

/// Certificates for a member of `H_4`.
///
/// Rules, in order of preference: a `K_4` or `T(2)` endblock gives one path
/// and its cutvertex (or a degree-3 vertex) as cover, and is removed; a
/// `T(p)` block loses an edge through all of its cutvertices; otherwise a
/// `Sub_2(H)` block with at most one non-tree side is solved through a
/// bipartite matching of `H` with pendant edges for the 3-paths hanging
/// off it. Pendant trees are reduced first whenever they carry a 4-path.
///
/// Covers of the remaining graph are repaired on the way back in two
/// places. An edge deletion keeps both numbers, but a cover of the smaller graph
/// need not cover the larger one. It is repaired on the way back: if the
/// cover meets the `T(p)` block, its block vertices are replaced by one
/// cutvertex, after which the rest of the block is a star hanging off it.
/// When the leaf-block rule keeps `x*` with the middle vertex `m` of its
/// assigned edge, `m` is a leaf at `x*` in the remaining graph; a cover
/// using `m` is switched to `x*` so that paths entering the block through
/// `x*` along other threads are also met.
pub fn solve_h4(g: &Graph) -> Result<Solution, SolveError> {
    if let Some(w) = recognize_h4(g).witness {
        return Err(SolveError::NotMember(w));
    }
    let mut work = Work::new(g, 4);
    let mut trace = ReductionTrace::default();
    let mut repairs: Vec<(usize, Repair)> = Vec::new();
    loop {
        work.prune();
        if work.is_empty() {
            break;
        }
        let report = recognize_h4(&work.g);
        if let Some(w) = &report.witness {
            return Err(SolveError::Stuck(format!("reduced graph left the class: {w}")));
        }
        let decomp = block_decomposition(&work.g);
        if let Some(step) = endblock_step(&mut work, &report, &decomp) {
            trace.steps.push(step);
        } else if let Some((step, block, c)) = edge_deletion_step(&mut work, &report, &decomp) {
            repairs.push((trace.steps.len(), Repair::Block { vertices: block, c }));
            trace.steps.push(step);
        } else {
            let (step, swap) = leaf_block_step(&mut work, &report, &decomp)?;
            if let Some((leaf, x)) = swap {
                repairs.push((trace.steps.len(), Repair::Leaf { leaf, x }));
            }
            trace.steps.push(step);
        }
    }

    let mut cover: BTreeSet<usize> = BTreeSet::new();
    for (i, step) in trace.steps.iter_mut().enumerate().rev() {
        match repairs.iter().find(|r| r.0 == i).map(|r| &r.1) {
            Some(Repair::Block { vertices, c }) => {
                let hit: Vec<usize> = vertices.iter().copied().filter(|v| cover.contains(v)).collect();
                if !hit.is_empty() {
                    for v in &hit {
                        cover.remove(v);
                    }
                    cover.insert(*c);
                    step.cover_removed = hit;
                    step.cover = vec![*c];
                }
            }
            Some(Repair::Leaf { leaf, x }) => {
                if cover.remove(leaf) {
                    step.cover_removed = vec![*leaf];
                    step.cover.push(*x);
                }
                cover.extend(step.cover.iter().copied());
            }
            None => cover.extend(step.cover.iter().copied()),
        }
    }
    Solution::from_trace(g, 4, trace)
}

enum Repair {
    /// Edge deletion in a `T(p)` block: block vertices and replacement cutvertex.
    Block { vertices: Vec<usize>, c: usize },
    /// Leaf-block rule keeping `x*`: the kept middle vertex and `x*`.
    Leaf { leaf: usize, x: usize },
}

fn endblock_step(work: &mut Work, report: &RecognitionReport, decomp: &BlockDecomposition) -> Option<ReductionStep> {
    let (id, path, fallback) = report.blocks.iter().find_map(|b| match &b.class {
        BlockClass::K4Endblock => Some((b.id, b.vertices.clone(), b.vertices[0])),
        BlockClass::T2Endblock(t) => Some((b.id, vec![t.fan[0], t.apex[0], t.fan[1], t.apex[1]], t.apex[0])),
        _ => None,
    })?;
    let block = decomp.blocks[id].vertices.clone();
    let x = decomp.cutvertices_in(id).first().copied().unwrap_or(fallback);
    let path = KPath::new(&work.g, path).expect("block path");
    work.remove_vertices(&block);
    Some(ReductionStep {
        rule: ReductionRule::EndblockRule,
        removed_vertices: block,
        removed_edges: Vec::new(),
        matching: vec![path],
        cover: vec![x],
        cover_removed: Vec::new(),
        delta: 1,
    })
}

fn edge_deletion_step(
    work: &mut Work,
    report: &RecognitionReport,
    decomp: &BlockDecomposition,
) -> Option<(ReductionStep, Vec<usize>, usize)> {
    let (id, tp) = report.blocks.iter().find_map(|b| match &b.class {
        BlockClass::Tp(t) => Some((b.id, t.clone())),
        _ => None,
    })?;
    let block = &decomp.blocks[id];
    let cut = decomp.cutvertices_in(id);
    let edge = match cut.as_slice() {
        [] => block.edges[0],
        [c] => *block
            .edges
            .iter()
            .find(|&&(u, v)| u == *c || v == *c)
            .expect("cutvertex has a block edge"),
        [a, b] => (*a, *b),
        _ => unreachable!("recognised T(p) blocks have at most two cutvertices"),
    };
    let leaves_only = |x: usize| {
        work.g
            .neighbors(x)
            .iter()
            .filter(|w| !block.contains(**w))
            .all(|&w| work.g.degree(w) == 1)
    };
    let replacement = match cut.as_slice() {
        [] => tp.apex[0],
        [c] => *c,
        _ => cut.iter().copied().find(|&x| !leaves_only(x)).unwrap_or(cut[0]),
    };
    let vertices = block.vertices.clone();
    work.remove_edge(edge.0, edge.1);
    let step = ReductionStep {
        rule: ReductionRule::EdgeDeletionRule,
        removed_vertices: Vec::new(),
        removed_edges: vec![edge],
        matching: Vec::new(),
        cover: Vec::new(),
        cover_removed: Vec::new(),
        delta: 0,
    };
    Some((step, vertices, replacement))
}

/// `H` extended by pendant edges: multigraph, host label per vertex, thread per edge.
struct Extended {
    h: Multigraph,
    labels: Vec<usize>,
    threads: Vec<Thread>,
    /// (leaf index, index of its attachment vertex)
    leaves: Vec<(usize, usize)>,
}

impl Extended {
    fn new(s: &SubdivisionBlock, pendant: &[[usize; 3]]) -> Self {
        let mut h = s.h.clone();
        let mut labels = s.h_vertices.clone();
        let mut threads = s.threads.clone();
        let mut leaves = Vec::new();
        for &[x, a, b] in pendant {
            let ix = s.index_of(x).expect("cutvertex is a multigraph vertex");
            let il = h.add_vertex();
            labels.push(b);
            h.push_edge(ix, il);
            threads.push(Thread {
                start: x,
                interior: vec![a],
                end: b,
            });
            leaves.push((il, ix));
        }
        Extended {
            h,
            labels,
            threads,
            leaves,
        }
    }

    /// Matching of `h` minus the vertex `skip`, in edge ids of `h`.
    fn matching_without(&self, side: &[bool], skip: usize) -> Result<BipartiteCertificate, SolveError> {
        let kept: Vec<usize> = (0..self.h.m())
            .filter(|&e| self.h.edges()[e].0 != skip && self.h.edges()[e].1 != skip)
            .collect();
        let sub = Multigraph::new(self.h.n(), kept.iter().map(|&e| self.h.edges()[e])).expect("same vertices");
        let mut cert = bipartite_matching(&sub, side)?;
        for e in cert.matching.iter_mut() {
            *e = kept[*e];
        }
        Ok(cert)
    }

    /// Host labels of a cover, with every added leaf traded for its
    /// attachment vertex.
    fn host_cover(&self, cover: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = cover.iter().copied().collect();
        for &(il, ix) in &self.leaves {
            if set.remove(&il) {
                set.insert(ix);
            }
        }
        set.into_iter().map(|i| self.labels[i]).collect()
    }
}

fn leaf_block_step(
    work: &mut Work,
    report: &RecognitionReport,
    decomp: &BlockDecomposition,
) -> Result<(ReductionStep, Option<(usize, usize)>), SolveError> {
    let mut chosen = None;
    for (id, b) in decomp.blocks.iter().enumerate() {
        if b.is_trivial() {
            continue;
        }
        let cut = decomp.cutvertices_in(id);
        let sides: Vec<(usize, Vec<usize>)> = cut
            .iter()
            .map(|&x| {
                let avoid: Vec<usize> = b.vertices.iter().copied().filter(|&v| v != x).collect();
                (x, work.reach(x, &avoid))
            })
            .collect();
        let non_tree: Vec<usize> = sides
            .iter()
            .filter(|(_, s)| !work.is_tree(s))
            .map(|(x, _)| *x)
            .collect();
        if non_tree.len() <= 1 {
            let star = non_tree.first().or(cut.first()).copied();
            chosen = Some((id, star, sides));
            break;
        }
    }
    let Some((id, star, sides)) = chosen else {
        if decomp.blocks.iter().any(|b| !b.is_trivial()) {
            return Err(SolveError::Stuck("no block has at most one non-tree side".into()));
        }
        let comp = work.components().remove(0);
        let step = tree_rule(work, comp[0], &comp)
            .ok_or_else(|| SolveError::Stuck("tree with a 4-path admits no reduction".into()))?;
        return Ok((step, None));
    };
    for (x, side) in &sides {
        if Some(*x) != star && work.kpath_within(side).is_some() {
            return Ok((tree_rule(work, *x, side).expect("side has a 4-path"), None));
        }
    }
    let s = match &report.blocks[id].class {
        BlockClass::Subdivision(s) => s.clone(),
        other => return Err(SolveError::Stuck(format!("unexpected block class {other:?}"))),
    };
    let block = &decomp.blocks[id];
    let mut pendant = Vec::new();
    for (x, _) in sides.iter().filter(|(x, _)| Some(*x) != star) {
        let hang = work.g.neighbors(*x).iter().copied().filter(|a| !block.contains(*a));
        let p = hang
            .filter_map(|a| {
                let b = work.g.neighbors(a).iter().copied().find(|&b| b != *x)?;
                Some([*x, a, b])
            })
            .next();
        pendant.extend(p);
    }
    let ext = Extended::new(&s, &pendant);
    let side = ext
        .h
        .bipartition()
        .ok_or_else(|| SolveError::Stuck("recovered multigraph is not bipartite".into()))?;

    let mut removed: BTreeSet<usize> = block.vertices.iter().copied().collect();
    for (x, region) in &sides {
        if Some(*x) != star {
            removed.extend(region.iter().copied());
        }
    }
    let (matching, cover_idx, extra) = match star {
        None => {
            let cert = bipartite_matching(&ext.h, &side)?;
            (cert.matching, cert.cover, None)
        }
        Some(x) => {
            let ix = s.index_of(x).expect("cutvertex is a multigraph vertex");
            let full = bipartite_matching(&ext.h, &side)?;
            let without = ext.matching_without(&side, ix)?;
            if without.size() + 1 == full.size() {
                // some minimum cover contains x: the rest is G_x - x
                let mut cover = without.cover;
                cover.push(ix);
                (full.matching, cover, None)
            } else {
                // no minimum cover contains x: the rest is G_x plus the
                // middle vertex of the edge assigned to x
                removed.remove(&x);
                (without.matching, full.cover, Some(ix))
            }
        }
    };
    let extra_list: Vec<usize> = extra.into_iter().collect();
    let (partners, extra_edges) = matching_partner_assignment(&ext.h, &matching, &extra_list)?;
    let mut swap = None;
    if let (Some(&fe), Some(ix)) = (extra_edges.first(), extra) {
        let m = ext.threads[fe].interior[0];
        removed.remove(&m);
        swap = Some((m, ext.labels[ix]));
    }
    let paths = matching
        .iter()
        .zip(&partners)
        .map(|(&e, &fe)| KPath::new(&work.g, pair_path(&ext.threads, e, fe)))
        .collect::<Result<Vec<_>, _>>()?;
    let cover = ext.host_cover(&cover_idx);
    let removed: Vec<usize> = removed.into_iter().collect();
    work.remove_vertices(&removed);
    let step = ReductionStep {
        rule: ReductionRule::LeafBlockRule,
        removed_vertices: removed,
        removed_edges: Vec::new(),
        delta: paths.len(),
        matching: paths,
        cover,
        cover_removed: Vec::new(),
    };
    Ok((step, swap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{nu_k, tau_k};

    fn agrees(g: &Graph) -> Solution {
        let s = solve_h4(g).unwrap();
        assert_eq!(s.value, nu_k(g, 4).unwrap().0, "{g:?}");
        assert_eq!(s.value, tau_k(g, 4).unwrap().0, "{g:?}");
        assert_eq!(s.trace.replay(), (s.matching.clone(), s.cover.clone()));
        s
    }

    #[test]
    fn examples() {
        let k4_pendant = Graph::new(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        assert_eq!(agrees(&k4_pendant).value, 1);
        // T(3) with two leaves at apex 0 and one leaf at apex 1
        let fig1 = Graph::new(
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
        agrees(&fig1);
        assert_eq!(agrees(&Graph::cycle(8)).value, 2);
        agrees(&Graph::cycle(12));
        agrees(&Graph::complete(4));
        agrees(&Graph::cycle(3));
        agrees(&Graph::path(9));
    }

    #[test]
    fn leaf_block_cases() {
        // C8 with a pendant 3-path at 0 and a 4-path tail at 4.
        let g = Graph::new(
            15,
            (0..8)
                .map(|i| (i, (i + 1) % 8))
                .chain([(0, 8), (8, 9), (4, 10), (10, 11), (11, 12), (12, 13), (13, 14)]),
        )
        .unwrap();
        agrees(&g);
        // two C8 blocks joined by an edge, with pendant paths
        let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        edges.extend((0..8).map(|i| (8 + i, 8 + (i + 1) % 8)));
        edges.extend([(0, 8), (2, 16), (16, 17), (10, 18)]);
        agrees(&Graph::new(19, edges).unwrap());
        // T(2) endblock hanging off a C4 at a degree-2 fan vertex
        let g = Graph::new(
            8,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
            ],
        )
        .unwrap();
        if recognize_h4(&g).member {
            agrees(&g);
        }
    }

    #[test]
    fn kept_leaf_is_traded_for_its_cutvertex() {
        // C4 with triangles at two opposite vertices: after both edge
        // deletions the leaf-block rule keeps 6 and a middle vertex of the C4
        let g = Graph::new(
            8,
            [
                (0, 6),
                (0, 7),
                (1, 6),
                (1, 7),
                (2, 5),
                (2, 7),
                (3, 4),
                (3, 6),
                (4, 6),
                (5, 7),
            ],
        )
        .unwrap();
        assert_eq!(agrees(&g).value, 2);
    }

    #[test]
    fn rejects_non_members() {
        assert!(matches!(solve_h4(&Graph::cycle(6)), Err(SolveError::NotMember(_))));
    }
}
