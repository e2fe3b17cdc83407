use std::ops::ControlFlow;
use thiserror::Error;

use super::{nu_star_with, Rational, RelaxationError};
use crate::graph::{induced_subgraph, Graph};
use crate::oracle::{for_each_kpath, validate_certificates, KMatching, KPath, KVertexCover, OracleConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("not in class: {0}")]
    NotInClass(String),
    #[error(transparent)]
    Relaxation(#[from] RelaxationError),
}

struct Lp<'a> {
    g: &'a Graph,
    k: usize,
    cfg: &'a OracleConfig,
}

impl Lp<'_> {
    /// LP value of the subgraph induced by `keep`.
    fn value(&self, keep: &[bool]) -> Result<Rational, ExtractError> {
        let vs: Vec<usize> = (0..self.g.n()).filter(|&v| keep[v]).collect();
        let h = induced_subgraph(self.g, &vs).expect("valid vertex set");
        Ok(nu_star_with(&h.graph, self.k, self.cfg)?.0)
    }
}

/// Certificates from LP values alone, for graphs in `G_k`.
///
/// 1. Delete vertices in ascending order while the LP value is unchanged,
///    giving a minimal induced subgraph `G'` with the same value.
/// 2. In `G'`, repeatedly take the lexicographically least k-path whose
///    removal lowers the LP value by exactly one.
/// 3. In `g`, repeatedly take the least vertex whose removal lowers the LP
///    value by exactly one.
///
/// Anything unexpected (fractional value, no unit drop, certificates that do
/// not validate) is reported as [`ExtractError::NotInClass`].
pub fn lp_extract_certificates_with(
    g: &Graph,
    k: usize,
    cfg: &OracleConfig,
) -> Result<(KMatching, KVertexCover), ExtractError> {
    let lp = Lp { g, k, cfg };
    let n = g.n();
    let all = vec![true; n];
    let value = lp.value(&all)?;
    let Some(target) = value.to_i64() else {
        return Err(ExtractError::NotInClass(format!("LP value {value} is not integral")));
    };
    let one = Rational::one();

    // The LP value is monotone under deletion, so a vertex rejected once
    // stays rejected and a single ascending pass equals restarting.
    let mut core = all.clone();
    for v in 0..n {
        core[v] = false;
        if lp.value(&core)? != value {
            core[v] = true;
        }
    }

    let mut paths = Vec::new();
    let mut current = value.clone();
    let mut alive = core;
    for _ in 0..target {
        let vs: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        let h = induced_subgraph(g, &vs).expect("valid vertex set");
        let goal = &current - &one;
        let mut found: Option<Result<Vec<usize>, ExtractError>> = None;
        for_each_kpath(&h.graph, k, |p| {
            let mut next = alive.clone();
            for &x in p {
                next[h.original[x]] = false;
            }
            match lp.value(&next) {
                Ok(v) if v == goal => {
                    found = Some(Ok(p.iter().map(|&x| h.original[x]).collect()));
                    ControlFlow::Break(())
                }
                Ok(_) => ControlFlow::Continue(()),
                Err(e) => {
                    found = Some(Err(e));
                    ControlFlow::Break(())
                }
            }
        });
        let path = match found {
            Some(r) => r?,
            None => {
                return Err(ExtractError::NotInClass(format!(
                    "no k-path lowers LP value {current} by one"
                )))
            }
        };
        for &x in &path {
            alive[x] = false;
        }
        paths.push(KPath::new(g, path).expect("path of an induced subgraph"));
        current = goal;
    }

    let mut cover = Vec::new();
    let mut current = value.clone();
    let mut alive = all;
    for _ in 0..target {
        let goal = &current - &one;
        let mut pick = None;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            let drops = lp.value(&alive)? == goal;
            alive[v] = true;
            if drops {
                pick = Some(v);
                break;
            }
        }
        let Some(v) = pick else {
            return Err(ExtractError::NotInClass(format!(
                "no vertex lowers LP value {current} by one"
            )));
        };
        alive[v] = false;
        cover.push(v);
        current = goal;
    }

    let matching = KMatching::new(paths);
    let cover = KVertexCover::new(cover);
    validate_certificates(g, k, &matching, &cover).map_err(|e| ExtractError::NotInClass(e.to_string()))?;
    Ok((matching, cover))
}

pub fn lp_extract_certificates(g: &Graph, k: usize) -> Result<(KMatching, KVertexCover), ExtractError> {
    lp_extract_certificates_with(g, k, &OracleConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{subdivide, Multigraph};

    #[test]
    fn examples() {
        let (m, c) = lp_extract_certificates(&Graph::cycle(9), 3).unwrap();
        assert_eq!((m.len(), c.len()), (3, 3));
        let sub = subdivide(&Multigraph::from_graph(&Graph::complete(4)), 3).unwrap();
        let (m, c) = lp_extract_certificates(&sub, 3).unwrap();
        assert_eq!((m.len(), c.len()), (4, 4));
        assert!(matches!(
            lp_extract_certificates(&Graph::cycle(5), 2),
            Err(ExtractError::NotInClass(_))
        ));
    }

    #[test]
    fn cover_is_chosen_in_the_whole_graph() {
        // Path 0-2-3-1: the minimal subgraph is {1, 2, 3}, whose least
        // unit-drop vertex 1 does not meet the k-path 0-2-3 of the full graph.
        let g = Graph::new(4, [(0, 2), (2, 3), (1, 3)]).unwrap();
        let (m, c) = lp_extract_certificates(&g, 3).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(c.vertices(), &[2]);
    }
}
