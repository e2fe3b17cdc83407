use std::collections::BTreeSet;
use std::ops::ControlFlow;
use thiserror::Error;

use super::{solve_lp, LpError, LpProblem, LpSolution, Rational, Relation, Sense};
use crate::graph::Graph;
use crate::oracle::{for_each_kpath, OracleConfig, OracleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelaxationError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// Distinct vertex sets of k-paths, each sorted, in sorted order. Paths on
/// the same vertex set give identical LP columns/rows, so one suffices.
pub fn path_vertex_sets(g: &Graph, k: usize, max_paths: usize) -> Result<Vec<Vec<usize>>, OracleError> {
    if k == 0 {
        return Err(OracleError::ZeroK);
    }
    let mut sets = BTreeSet::new();
    let mut count = 0usize;
    for_each_kpath(g, k, |p| {
        count += 1;
        if count > max_paths {
            return ControlFlow::Break(());
        }
        let mut s = p.to_vec();
        s.sort_unstable();
        sets.insert(s);
        ControlFlow::Continue(())
    });
    if count > max_paths {
        return Err(OracleError::Budget {
            what: "k-paths",
            got: count,
            limit: max_paths,
        });
    }
    Ok(sets.into_iter().collect())
}

/// Vertices lying on some k-path; others have no constraint/variable.
fn touched(sets: &[Vec<usize>]) -> Vec<usize> {
    let all: BTreeSet<usize> = sets.iter().flatten().copied().collect();
    all.into_iter().collect()
}

/// An LP together with its path vertex sets and its vertex list.
pub type PathLp = (LpProblem, Vec<Vec<usize>>, Vec<usize>);

/// `max sum x_P` s.t. `sum_{P ni u} x_P <= 1`. Returns the LP, its columns
/// (path vertex sets) and its rows (vertices).
pub fn packing_lp(g: &Graph, k: usize, cfg: &OracleConfig) -> Result<PathLp, OracleError> {
    let sets = path_vertex_sets(g, k, cfg.max_paths)?;
    let rows = touched(&sets);
    let mut p = LpProblem::new(Sense::Maximize, vec![Rational::one(); sets.len()]);
    for &u in &rows {
        let coeffs = sets
            .iter()
            .map(|s| {
                if s.binary_search(&u).is_ok() {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        p.push(coeffs, Relation::Le, Rational::one());
    }
    Ok((p, sets, rows))
}

/// `min sum y_u` s.t. `sum_{u in P} y_u >= 1`. Returns the LP, its rows
/// (path vertex sets) and its columns (vertices).
pub fn covering_lp(g: &Graph, k: usize, cfg: &OracleConfig) -> Result<PathLp, OracleError> {
    let sets = path_vertex_sets(g, k, cfg.max_paths)?;
    let cols = touched(&sets);
    let mut p = LpProblem::new(Sense::Minimize, vec![Rational::one(); cols.len()]);
    for s in &sets {
        let coeffs = cols
            .iter()
            .map(|u| {
                if s.binary_search(u).is_ok() {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        p.push(coeffs, Relation::Ge, Rational::one());
    }
    Ok((p, sets, cols))
}

fn solve_checked(p: &LpProblem) -> Result<LpSolution, RelaxationError> {
    let s = solve_lp(p)?;
    s.verify(p)?;
    Ok(s)
}

/// Fractional k-matching number with its verified LP solution.
pub fn nu_star_with(g: &Graph, k: usize, cfg: &OracleConfig) -> Result<(Rational, LpSolution), RelaxationError> {
    let (p, _, _) = packing_lp(g, k, cfg)?;
    let s = solve_checked(&p)?;
    Ok((s.value.clone(), s))
}

/// Fractional k-vertex cover number with its verified LP solution.
pub fn tau_star_with(g: &Graph, k: usize, cfg: &OracleConfig) -> Result<(Rational, LpSolution), RelaxationError> {
    let (p, _, _) = covering_lp(g, k, cfg)?;
    let s = solve_checked(&p)?;
    Ok((s.value.clone(), s))
}

pub fn nu_star(g: &Graph, k: usize) -> Result<Rational, RelaxationError> {
    nu_star_with(g, k, &OracleConfig::default()).map(|r| r.0)
}

pub fn tau_star(g: &Graph, k: usize) -> Result<Rational, RelaxationError> {
    tau_star_with(g, k, &OracleConfig::default()).map(|r| r.0)
}
