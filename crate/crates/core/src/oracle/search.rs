//! Branch and bound over a fixed family of k-vertex sets (path masks).
//!
//! Every sub-problem is the family restricted to some vertex set, so it is
//! identified by the union of its members, which keys the memo tables.

use std::collections::HashMap;

use super::{bits, OracleError};

pub(crate) struct PathSearch {
    k: u32,
    nu_memo: HashMap<u64, u32>,
    tau_memo: HashMap<u64, u32>,
    covers_memo: HashMap<u64, Vec<u64>>,
    max_states: usize,
}

fn union(paths: &[u64]) -> u64 {
    paths.iter().fold(0, |a, &p| a | p)
}

pub(crate) fn within(paths: &[u64], alive: u64) -> Vec<u64> {
    paths.iter().copied().filter(|&p| p & !alive == 0).collect()
}

/// Groups of paths connected through shared vertices.
fn components(paths: &[u64]) -> Vec<Vec<u64>> {
    let mut comps: Vec<(u64, Vec<u64>)> = Vec::new();
    for &p in paths {
        let mut mask = p;
        let mut members = vec![p];
        let mut i = 0;
        while i < comps.len() {
            if comps[i].0 & mask != 0 {
                let (m, list) = comps.swap_remove(i);
                mask |= m;
                members.extend(list);
                i = 0;
            } else {
                i += 1;
            }
        }
        comps.push((mask, members));
    }
    comps.sort_by_key(|c| c.0.trailing_zeros());
    comps.into_iter().map(|(_, l)| l).collect()
}

/// Vertex lying in the most paths; least vertex on ties.
fn busiest_vertex(paths: &[u64]) -> usize {
    let mut count = [0u32; 64];
    for &p in paths {
        for v in bits(p) {
            count[v] += 1;
        }
    }
    (0..64).max_by_key(|&v| (count[v], std::cmp::Reverse(v))).unwrap()
}

fn greedy_packing(paths: &[u64]) -> u32 {
    let mut used = 0u64;
    let mut n = 0;
    for &p in paths {
        if p & used == 0 {
            used |= p;
            n += 1;
        }
    }
    n
}

impl PathSearch {
    pub(crate) fn new(k: usize, max_states: usize) -> Self {
        PathSearch {
            k: k as u32,
            nu_memo: HashMap::new(),
            tau_memo: HashMap::new(),
            covers_memo: HashMap::new(),
            max_states,
        }
    }

    fn charge(&self) -> Result<(), OracleError> {
        let used = self.nu_memo.len() + self.tau_memo.len() + self.covers_memo.len();
        if used > self.max_states {
            return Err(OracleError::Budget {
                what: "search states",
                got: used,
                limit: self.max_states,
            });
        }
        Ok(())
    }

    /// Maximum number of pairwise disjoint members of `paths`.
    pub(crate) fn nu(&mut self, paths: &[u64]) -> Result<u32, OracleError> {
        match paths.len() {
            0 => return Ok(0),
            1 => return Ok(1),
            _ => {}
        }
        let key = union(paths);
        if let Some(&v) = self.nu_memo.get(&key) {
            return Ok(v);
        }
        let comps = components(paths);
        let value = if comps.len() > 1 {
            let mut sum = 0;
            for c in &comps {
                sum += self.nu(c)?;
            }
            sum
        } else {
            let upper = key.count_ones() / self.k;
            let v = busiest_vertex(paths);
            let without: Vec<u64> = paths.iter().copied().filter(|&p| p >> v & 1 == 0).collect();
            let base = self.nu(&without)?;
            let mut best = base;
            for &p in paths.iter().filter(|&&p| p >> v & 1 == 1) {
                if best == upper || best == base + 1 {
                    break;
                }
                let rest: Vec<u64> = paths.iter().copied().filter(|&q| q & p == 0).collect();
                best = best.max(1 + self.nu(&rest)?);
            }
            best
        };
        self.nu_memo.insert(key, value);
        self.charge()?;
        Ok(value)
    }

    /// Minimum number of vertices meeting every member of `paths`.
    pub(crate) fn tau(&mut self, paths: &[u64]) -> Result<u32, OracleError> {
        match paths.len() {
            0 => return Ok(0),
            1 => return Ok(1),
            _ => {}
        }
        let key = union(paths);
        if let Some(&v) = self.tau_memo.get(&key) {
            return Ok(v);
        }
        let comps = components(paths);
        let value = if comps.len() > 1 {
            let mut sum = 0;
            for c in &comps {
                sum += self.tau(c)?;
            }
            sum
        } else {
            let lower = greedy_packing(paths);
            let v = busiest_vertex(paths);
            // Some vertex of a path through v must be chosen; try v first.
            let pivot = *paths.iter().find(|&&p| p >> v & 1 == 1).unwrap();
            let mut order: Vec<usize> = bits(pivot).collect();
            order.sort_by_key(|&u| (u != v, u));
            let mut best = u32::MAX;
            for u in order {
                let rest: Vec<u64> = paths.iter().copied().filter(|&p| p >> u & 1 == 0).collect();
                best = best.min(1 + self.tau(&rest)?);
                if best == lower {
                    break;
                }
            }
            best
        };
        self.tau_memo.insert(key, value);
        self.charge()?;
        Ok(value)
    }

    /// Every minimum hitting set of `paths`, as sorted masks.
    pub(crate) fn min_covers(&mut self, paths: &[u64]) -> Result<Vec<u64>, OracleError> {
        if paths.is_empty() {
            return Ok(vec![0]);
        }
        let key = union(paths);
        if let Some(c) = self.covers_memo.get(&key) {
            return Ok(c.clone());
        }
        let target = self.tau(paths)?;
        let mut out = Vec::new();
        // Every minimum cover meets the first path at some vertex u, and
        // minus u it is a minimum cover of the paths avoiding u.
        for u in bits(paths[0]) {
            let rest: Vec<u64> = paths.iter().copied().filter(|&p| p >> u & 1 == 0).collect();
            if self.tau(&rest)? + 1 == target {
                out.extend(self.min_covers(&rest)?.into_iter().map(|c| c | 1 << u));
            }
        }
        out.sort_unstable();
        out.dedup();
        self.covers_memo.insert(key, out.clone());
        self.charge()?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_nu(paths: &[u64]) -> u32 {
        (0u32..1 << paths.len())
            .filter(|&s| {
                let mut used = 0u64;
                bits(s as u64).all(|i| {
                    let ok = paths[i] & used == 0;
                    used |= paths[i];
                    ok
                })
            })
            .map(|s| s.count_ones())
            .max()
            .unwrap_or(0)
    }

    fn brute_covers(paths: &[u64], n: usize) -> Vec<u64> {
        let hitting: Vec<u64> = (0u64..1 << n).filter(|&c| paths.iter().all(|&p| p & c != 0)).collect();
        let best = hitting.iter().map(|c| c.count_ones()).min().unwrap();
        hitting.into_iter().filter(|c| c.count_ones() == best).collect()
    }

    proptest! {
        #[test]
        fn matches_brute_force(raw in proptest::collection::vec(proptest::sample::subsequence((0..9usize).collect::<Vec<_>>(), 3), 1..12)) {
            let mut paths: Vec<u64> = raw.iter().map(|s| s.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
            paths.sort_unstable();
            paths.dedup();
            let mut s = PathSearch::new(3, usize::MAX);
            prop_assert_eq!(s.nu(&paths).unwrap(), brute_nu(&paths));
            let covers = brute_covers(&paths, 9);
            prop_assert_eq!(s.tau(&paths).unwrap(), covers[0].count_ones());
            prop_assert_eq!(s.min_covers(&paths).unwrap(), covers);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let paths: Vec<u64> = (0..20).map(|i| 0b111u64 << i).collect();
        let mut s = PathSearch::new(3, 2);
        assert!(matches!(s.nu(&paths), Err(OracleError::Budget { .. })));
    }
}
