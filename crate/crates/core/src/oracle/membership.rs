use std::ops::ControlFlow;

use super::search::PathSearch;
use super::{for_each_kpath, path_masks, OracleConfig, OracleError};
use crate::graph::Graph;

fn check_vertices(g: &Graph, cfg: &OracleConfig) -> Result<(), OracleError> {
    let limit = cfg.max_subset_vertices.min(26);
    if g.n() > limit {
        return Err(OracleError::Budget {
            what: "vertices for subset sweep",
            got: g.n(),
            limit,
        });
    }
    Ok(())
}

/// `nu_k(H) = tau_k(H)` for every induced subgraph `H` of `g`.
///
/// Both numbers are tabulated for all vertex subsets bottom-up. With `v` the
/// least vertex of `S`, a path inside `S` through `v` has `v` as its least
/// vertex, so only paths grouped under `v` matter:
/// `nu(S) = max(nu(S-v), 1 + nu(S-P))` and, if such a `P` exists,
/// `tau(S) = 1 + min over u in P of tau(S-u)`, else `tau(S) = tau(S-v)`.
/// The sweep stops at the first subset where they differ.
pub fn in_gk_with(g: &Graph, k: usize, cfg: &OracleConfig) -> Result<bool, OracleError> {
    if k == 0 {
        return Err(OracleError::ZeroK);
    }
    if k == 1 {
        return Ok(true);
    }
    check_vertices(g, cfg)?;
    let n = g.n();
    let masks = path_masks(g, k, cfg.max_paths)?;
    if masks.is_empty() {
        return Ok(true);
    }
    let mut by_least = vec![Vec::new(); n];
    for &m in &masks {
        by_least[m.trailing_zeros() as usize].push(m);
    }
    let size = 1usize << n;
    let mut nu = vec![0u8; size];
    let mut tau = vec![0u8; size];
    for s in 1..size {
        let s64 = s as u64;
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let mut nu_s = nu[rest];
        let mut pivot = None;
        for &p in &by_least[v] {
            if p & !s64 == 0 {
                pivot.get_or_insert(p);
                nu_s = nu_s.max(1 + nu[(s64 & !p) as usize]);
            }
        }
        let tau_s = match pivot {
            None => tau[rest],
            Some(p) => 1 + super::bits(p).map(|u| tau[s & !(1 << u)]).min().unwrap(),
        };
        if nu_s != tau_s {
            return Ok(false);
        }
        nu[s] = nu_s;
        tau[s] = tau_s;
    }
    Ok(true)
}

pub fn in_gk(g: &Graph, k: usize) -> Result<bool, OracleError> {
    in_gk_with(g, k, &OracleConfig::default())
}

/// `nu_k(H) = tau_k(H)` for every subgraph `H` of `g`, induced or not.
///
/// For `k >= 2` isolated vertices carry no k-path, so it suffices to range
/// over spanning subgraphs given by edge subsets.
pub fn in_gk_all_subgraphs_with(g: &Graph, k: usize, cfg: &OracleConfig) -> Result<bool, OracleError> {
    if k == 0 {
        return Err(OracleError::ZeroK);
    }
    if k == 1 {
        return Ok(true);
    }
    if !in_gk_with(g, k, cfg)? {
        return Ok(false);
    }
    let limit = cfg.max_subgraph_edges.min(30);
    if g.m() > limit {
        return Err(OracleError::Budget {
            what: "edges for subgraph sweep",
            got: g.m(),
            limit,
        });
    }
    let edge_index = |u: usize, v: usize| g.edges().binary_search(&(u.min(v), u.max(v))).unwrap();
    // (vertex mask, edge mask) for every k-path.
    let mut paths: Vec<(u64, u64)> = Vec::new();
    let mut count = 0usize;
    for_each_kpath(g, k, |p| {
        count += 1;
        let vm = p.iter().fold(0u64, |m, &v| m | 1 << v);
        let em = p.windows(2).fold(0u64, |m, w| m | 1 << edge_index(w[0], w[1]));
        paths.push((vm, em));
        if count > cfg.max_paths {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    if count > cfg.max_paths {
        return Err(OracleError::Budget {
            what: "k-paths",
            got: count,
            limit: cfg.max_paths,
        });
    }
    let used_edges = paths.iter().fold(0u64, |a, &(_, e)| a | e);
    // Edges on no k-path never matter; sweep subsets of the rest.
    let relevant: Vec<usize> = super::bits(used_edges).collect();
    for sub in 0u64..(1 << relevant.len()) {
        let emask = relevant
            .iter()
            .enumerate()
            .filter(|(i, _)| sub >> i & 1 == 1)
            .fold(0u64, |m, (_, &e)| m | 1 << e);
        let mut family: Vec<u64> = paths
            .iter()
            .filter(|&&(_, e)| e & !emask == 0)
            .map(|&(v, _)| v)
            .collect();
        family.sort_unstable();
        family.dedup();
        let mut search = PathSearch::new(k, cfg.max_states);
        if search.nu(&family)? != search.tau(&family)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn in_gk_all_subgraphs(g: &Graph, k: usize) -> Result<bool, OracleError> {
    in_gk_all_subgraphs_with(g, k, &OracleConfig::default())
}
