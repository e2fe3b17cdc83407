use std::collections::VecDeque;

use super::work::Work;
use super::{ReductionRule, ReductionStep, ReductionTrace, Solution, SolveError};
use crate::oracle::KPath;
use crate::Graph;

/// One application of the pendant-tree rule inside `region`, a tree of the
/// working graph that meets the rest only at `root`.
///
/// With `region` rooted at `root`, `x` is a deepest vertex whose subtree
/// contains a k-path (least id among equals). Every k-path of that subtree
/// passes through `x`, so the subtree yields one path and `x` covers it;
/// the subtree is then deleted. Returns `None` if `region` has no k-path.
pub(crate) fn tree_rule(work: &mut Work, root: usize, region: &[usize]) -> Option<ReductionStep> {
    let k = work.k;
    let inside = |v: usize| region.binary_search(&v).is_ok();
    let mut order = vec![root];
    let mut parent = vec![usize::MAX; work.g.n()];
    let mut depth = vec![0usize; work.g.n()];
    let mut queue = VecDeque::from([root]);
    parent[root] = root;
    while let Some(u) = queue.pop_front() {
        for &w in work.g.neighbors(u) {
            if inside(w) && parent[w] == usize::MAX {
                parent[w] = u;
                depth[w] = depth[u] + 1;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    // down[v]: longest downward path from v; best[v]: longest path in the subtree.
    let mut down = vec![0usize; work.g.n()];
    let mut best = vec![0usize; work.g.n()];
    let mut top2 = vec![(0usize, 0usize); work.g.n()];
    for &v in order.iter().rev() {
        down[v] = 1 + top2[v].0;
        best[v] = best[v].max(1 + top2[v].0 + top2[v].1);
        if v != root {
            let p = parent[v];
            best[p] = best[p].max(best[v]);
            let t = &mut top2[p];
            if down[v] > t.0 {
                *t = (down[v], t.0);
            } else if down[v] > t.1 {
                t.1 = down[v];
            }
        }
    }
    let x = order
        .iter()
        .copied()
        .filter(|&v| best[v] >= k)
        .max_by_key(|&v| (depth[v], std::cmp::Reverse(v)))?;
    let mut subtree = vec![x];
    let mut i = 0;
    while i < subtree.len() {
        let u = subtree[i];
        for &w in work.g.neighbors(u) {
            if inside(w) && parent[w] == u && w != root {
                subtree.push(w);
            }
        }
        i += 1;
    }
    subtree.sort_unstable();
    let path = work.kpath_within(&subtree).expect("subtree has a k-path");
    let path = KPath::new(&work.g, path).expect("path of the working graph");
    work.remove_vertices(&subtree);
    Some(ReductionStep {
        rule: ReductionRule::TreeRule,
        removed_vertices: subtree,
        removed_edges: Vec::new(),
        matching: vec![path],
        cover: vec![x],
        cover_removed: Vec::new(),
        delta: 1,
    })
}

/// Exact `nu_k = tau_k` on a forest by repeated pendant-tree reductions,
/// each tree rooted at its least vertex.
pub fn solve_forest(g: &Graph, k: usize) -> Result<Solution, SolveError> {
    if k == 0 {
        return Err(SolveError::ZeroK);
    }
    if !g.is_forest() {
        return Err(SolveError::Cyclic);
    }
    let mut work = Work::new(g, k);
    let mut trace = ReductionTrace::default();
    loop {
        work.prune();
        let Some(comp) = work.components().into_iter().next() else {
            break;
        };
        let step = tree_rule(&mut work, comp[0], &comp)
            .ok_or_else(|| SolveError::Stuck("tree with a k-path admits no reduction".into()))?;
        trace.steps.push(step);
    }
    Solution::from_trace(g, k, trace)
}
