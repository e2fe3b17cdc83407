use rayon::prelude::*;
use std::collections::BTreeMap;

use crate::canon::{canonical_form, canonical_key, MAX_CANON_VERTICES};
use kpath_core::Graph;

/// One representative per isomorphism class for every order `1..=n_max`
/// among graphs all of whose induced subgraphs satisfy `keep`.
///
/// Level `i + 1` is obtained by joining a new vertex to every subset of
/// each level-`i` representative and deduplicating canonical forms. If
/// `keep` is hereditary this reaches every class it admits, because
/// deleting the last vertex of such a graph lands in the previous level.
/// `levels[i]` holds the graphs on `i + 1` vertices, sorted by canonical key.
pub fn generate_hereditary<F>(n_max: usize, keep: F) -> Vec<Vec<Graph>>
where
    F: Fn(&Graph) -> bool + Sync,
{
    assert!(n_max <= MAX_CANON_VERTICES);
    let mut levels: Vec<Vec<Graph>> = Vec::new();
    if n_max == 0 {
        return levels;
    }
    let first = Graph::empty(1);
    levels.push(if keep(&first) { vec![first] } else { Vec::new() });
    for n in 1..n_max {
        let prev = &levels[n - 1];
        let merged = prev
            .par_iter()
            .map(|g| {
                let mut local = BTreeMap::new();
                for subset in 0u32..1 << n {
                    let new_edges: Vec<(usize, usize)> =
                        (0..n).filter(|&v| subset >> v & 1 == 1).map(|v| (v, n)).collect();
                    let h = g.extended(1, &new_edges).expect("new vertex edges are valid");
                    let key = canonical_key(&h);
                    if local.contains_key(&key) || !keep(&h) {
                        continue;
                    }
                    local.insert(key, h);
                }
                local
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (key, h) in b {
                    a.entry(key).or_insert(h);
                }
                a
            });
        levels.push(merged.into_values().map(|h| canonical_form(&h)).collect());
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let levels = generate_hereditary(7, |_| true);
        let all: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156, 1044]);
        let connected: Vec<usize> = levels
            .iter()
            .map(|l| l.iter().filter(|g| g.is_connected()).count())
            .collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn forests() {
        let levels = generate_hereditary(8, |g| g.is_forest());
        let trees: Vec<usize> = levels
            .iter()
            .map(|l| l.iter().filter(|g| g.is_connected()).count())
            .collect();
        assert_eq!(trees, vec![1, 1, 1, 2, 3, 6, 11, 23]);
    }
}
