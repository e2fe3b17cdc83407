use std::ops::ControlFlow;

use super::search::{within, PathSearch};
use super::{bits, for_each_kpath, path_masks, KMatching, KPath, KVertexCover, OracleConfig, OracleError};
use crate::graph::{induced_subgraph, Graph, InducedSubgraph};

/// One connected component with its path family and a warm search.
struct Part {
    sub: InducedSubgraph,
    masks: Vec<u64>,
    search: PathSearch,
}

fn parts(g: &Graph, k: usize, cfg: &OracleConfig) -> Result<Vec<Part>, OracleError> {
    if k == 0 {
        return Err(OracleError::ZeroK);
    }
    let mut out = Vec::new();
    for comp in g.components() {
        if comp.len() < k {
            continue;
        }
        let limit = cfg.max_vertices.min(64);
        if comp.len() > limit {
            return Err(OracleError::Budget {
                what: "component vertices",
                got: comp.len(),
                limit,
            });
        }
        let sub = induced_subgraph(g, &comp).expect("component vertices are valid");
        let masks = path_masks(&sub.graph, k, cfg.max_paths)?;
        if masks.is_empty() {
            continue;
        }
        out.push(Part {
            sub,
            masks,
            search: PathSearch::new(k, cfg.max_states),
        });
    }
    Ok(out)
}

impl Part {
    /// Lexicographically least maximum matching: scan paths in order and
    /// keep each one that still extends to an optimum.
    fn matching(&mut self, k: usize) -> Result<Vec<KPath>, OracleError> {
        let mut rem = self.search.nu(&self.masks)?;
        let mut alive = u64::MAX;
        let mut chosen = Vec::new();
        let mut failure = None;
        let Part { sub, masks, search } = self;
        for_each_kpath(&sub.graph, k, |p| {
            if rem == 0 {
                return ControlFlow::Break(());
            }
            let m = p.iter().fold(0u64, |m, &v| m | 1 << v);
            if m & !alive != 0 {
                return ControlFlow::Continue(());
            }
            match search.nu(&within(masks, alive & !m)) {
                Ok(v) if v + 1 == rem => {
                    alive &= !m;
                    rem -= 1;
                    chosen.push(KPath::from_canonical(p.to_vec()).relabel(|v| sub.original[v]));
                }
                Ok(_) => {}
                Err(e) => {
                    failure = Some(e);
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        if let Some(e) = failure {
            return Err(e);
        }
        debug_assert_eq!(rem, 0);
        Ok(chosen)
    }

    /// Lexicographically least minimum cover.
    fn cover(&mut self) -> Result<Vec<usize>, OracleError> {
        let mut rem = self.search.tau(&self.masks)?;
        let mut alive = u64::MAX;
        let mut chosen = Vec::new();
        for v in 0..self.sub.graph.n() {
            if rem == 0 {
                break;
            }
            let next = alive & !(1 << v);
            if self.search.tau(&within(&self.masks, next))? + 1 == rem {
                alive = next;
                rem -= 1;
                chosen.push(self.sub.original[v]);
            }
        }
        debug_assert_eq!(rem, 0);
        Ok(chosen)
    }
}

pub fn nu_k_with(g: &Graph, k: usize, cfg: &OracleConfig) -> Result<(usize, KMatching), OracleError> {
    let mut paths = Vec::new();
    for mut part in parts(g, k, cfg)? {
        paths.extend(part.matching(k)?);
    }
    Ok((paths.len(), KMatching::new(paths)))
}

pub fn tau_k_with(g: &Graph, k: usize, cfg: &OracleConfig) -> Result<(usize, KVertexCover), OracleError> {
    let mut cover = Vec::new();
    for mut part in parts(g, k, cfg)? {
        cover.extend(part.cover()?);
    }
    Ok((cover.len(), KVertexCover::new(cover)))
}

/// `nu_k(g)` with a lexicographically least maximum k-matching.
pub fn nu_k(g: &Graph, k: usize) -> Result<(usize, KMatching), OracleError> {
    nu_k_with(g, k, &OracleConfig::default())
}

/// `tau_k(g)` with a lexicographically least minimum k-vertex cover.
pub fn tau_k(g: &Graph, k: usize) -> Result<(usize, KVertexCover), OracleError> {
    tau_k_with(g, k, &OracleConfig::default())
}

pub fn all_min_covers_with(g: &Graph, k: usize, cfg: &OracleConfig) -> Result<Vec<KVertexCover>, OracleError> {
    let mut combined: Vec<Vec<usize>> = vec![Vec::new()];
    for mut part in parts(g, k, cfg)? {
        let local = part.search.min_covers(&part.masks)?;
        let total = combined.len().saturating_mul(local.len());
        if total > cfg.max_states {
            return Err(OracleError::Budget {
                what: "minimum covers",
                got: total,
                limit: cfg.max_states,
            });
        }
        let mut next = Vec::with_capacity(total);
        for base in &combined {
            for &c in &local {
                let mut v = base.clone();
                v.extend(bits(c).map(|x| part.sub.original[x]));
                next.push(v);
            }
        }
        combined = next;
    }
    let mut out: Vec<KVertexCover> = combined.into_iter().map(KVertexCover::new).collect();
    out.sort();
    Ok(out)
}

/// Every minimum k-vertex cover, sorted.
pub fn all_min_covers(g: &Graph, k: usize) -> Result<Vec<KVertexCover>, OracleError> {
    all_min_covers_with(g, k, &OracleConfig::default())
}
