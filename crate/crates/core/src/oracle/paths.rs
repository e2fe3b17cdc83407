use std::ops::ControlFlow;

use super::KPath;
use crate::graph::Graph;

/// Depth-first extension of `path` to `k` vertices. `f` sees every complete
/// path in the order produced (neighbours ascending).
fn extend(
    g: &Graph,
    k: usize,
    blocked: &[bool],
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if path.len() == k {
        return f(path);
    }
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if on_path[w] || blocked[w] {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        let flow = extend(g, k, blocked, on_path, path, f);
        path.pop();
        on_path[w] = false;
        flow?;
    }
    ControlFlow::Continue(())
}

fn walk(
    g: &Graph,
    k: usize,
    blocked: &[bool],
    canonical_only: bool,
    mut f: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if k == 0 || k > g.n() {
        return ControlFlow::Continue(());
    }
    let mut on_path = vec![false; g.n()];
    let mut path = Vec::with_capacity(k);
    for s in 0..g.n() {
        if blocked[s] {
            continue;
        }
        on_path[s] = true;
        path.push(s);
        let flow = extend(g, k, blocked, &mut on_path, &mut path, &mut |p: &[usize]| {
            if canonical_only && k > 1 && p[0] > p[k - 1] {
                ControlFlow::Continue(())
            } else {
                f(p)
            }
        });
        path.pop();
        on_path[s] = false;
        flow?;
    }
    ControlFlow::Continue(())
}

/// Visits every k-path once, canonically oriented, in lexicographic order.
pub fn for_each_kpath(g: &Graph, k: usize, f: impl FnMut(&[usize]) -> ControlFlow<()>) {
    let blocked = vec![false; g.n()];
    let _ = walk(g, k, &blocked, true, f);
}

/// All k-paths, canonically oriented, sorted lexicographically.
pub fn enumerate_kpaths(g: &Graph, k: usize) -> Vec<KPath> {
    let mut out = Vec::new();
    for_each_kpath(g, k, |p| {
        out.push(KPath::from_canonical(p.to_vec()));
        ControlFlow::Continue(())
    });
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    out
}

/// Some k-path avoiding every blocked vertex, if one exists.
pub fn has_kpath_avoiding(g: &Graph, k: usize, blocked: &[bool]) -> Option<Vec<usize>> {
    let mut found = None;
    let _ = walk(g, k, blocked, false, |p| {
        found = Some(p.to_vec());
        ControlFlow::Break(())
    });
    found.map(|mut p| {
        if p[0] > *p.last().unwrap() {
            p.reverse();
        }
        p
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Independent count: permutations of k-subsets that are walks, halved.
    fn count_by_permutations(g: &Graph, k: usize) -> usize {
        fn rec(g: &Graph, k: usize, seq: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
            if seq.len() == k {
                let mut s = seq.clone();
                if s[0] > s[k - 1] {
                    s.reverse();
                }
                out.insert(s);
                return;
            }
            for v in 0..g.n() {
                if !seq.contains(&v) && seq.last().is_none_or(|&l| g.has_edge(l, v)) {
                    seq.push(v);
                    rec(g, k, seq, out);
                    seq.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        rec(g, k, &mut Vec::new(), &mut out);
        out.len()
    }

    #[test]
    fn examples() {
        assert_eq!(enumerate_kpaths(&Graph::path(3), 3).len(), 1);
        assert_eq!(enumerate_kpaths(&Graph::cycle(9), 3).len(), 9);
        assert_eq!(enumerate_kpaths(&Graph::complete(4), 4).len(), 12);
        assert_eq!(enumerate_kpaths(&Graph::complete(4), 1).len(), 4);
        assert!(enumerate_kpaths(&Graph::path(3), 4).is_empty());
        assert!(enumerate_kpaths(&Graph::path(3), 0).is_empty());
    }

    #[test]
    fn counts_match_permutation_search() {
        let graphs = [
            Graph::complete(5),
            Graph::complete_bipartite(2, 3),
            Graph::cycle(7),
            Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap(),
        ];
        for g in &graphs {
            for k in 1..=g.n() {
                assert_eq!(enumerate_kpaths(g, k).len(), count_by_permutations(g, k), "{g:?} k={k}");
            }
        }
    }

    #[test]
    fn avoiding() {
        let g = Graph::path(5);
        assert_eq!(has_kpath_avoiding(&g, 3, &[false; 5]), Some(vec![0, 1, 2]));
        assert_eq!(has_kpath_avoiding(&g, 3, &[false, false, true, false, false]), None);
        assert_eq!(
            has_kpath_avoiding(&g, 2, &[false, false, true, false, false]),
            Some(vec![0, 1])
        );
    }
}
