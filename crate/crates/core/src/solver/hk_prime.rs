use super::assign::matching_edge_assignment;
use super::forest::tree_rule;
use super::work::Work;
use super::{ReductionRule, ReductionStep, ReductionTrace, Solution, SolveError};
use crate::oracle::KPath;
use crate::recognition::{recognize_hk_prime, BlockClass, RecognitionError, SubdivisionBlock};
use crate::Graph;

/// Removes `V(H)` of a `Sub_k(H)` block whose attached parts carry no
/// k-path: every vertex `u` of `H` together with the interior of its
/// assigned edge `f(u)` is a k-path, and `V(H)` covers the block.
pub(crate) fn subdivision_step(work: &mut Work, s: &SubdivisionBlock) -> Result<ReductionStep, SolveError> {
    let f = matching_edge_assignment(&s.h)?;
    let mut paths = Vec::with_capacity(s.h.n());
    for (u, &e) in f.iter().enumerate() {
        let hu = s.h_vertices[u];
        let mut p = vec![hu];
        p.extend(s.threads[e].interior_from(hu));
        paths.push(KPath::new(&work.g, p)?);
    }
    work.remove_vertices(&s.h_vertices);
    Ok(ReductionStep {
        rule: ReductionRule::SubdivisionRule,
        removed_vertices: s.h_vertices.clone(),
        removed_edges: Vec::new(),
        delta: paths.len(),
        matching: paths,
        cover: s.h_vertices.clone(),
        cover_removed: Vec::new(),
    })
}

/// Certificates for a member of `H'_k` (odd `k >= 3`; for `k = 3` this is
/// all of `H_3`). Subdivision blocks are removed through their multigraph
/// vertices; once only trees remain, pendant-tree reductions finish.
pub fn solve_hk_prime(g: &Graph, k: usize) -> Result<Solution, SolveError> {
    let recognize = |g: &Graph| {
        recognize_hk_prime(g, k).map_err(|e| match e {
            RecognitionError::InvalidK(k) => SolveError::InvalidK(k),
        })
    };
    let report = recognize(g)?;
    if let Some(w) = report.witness {
        return Err(SolveError::NotMember(w));
    }
    let mut work = Work::new(g, k);
    let mut trace = ReductionTrace::default();
    loop {
        work.prune();
        if work.is_empty() {
            break;
        }
        if work.g.is_forest() {
            let comp = work.components().remove(0);
            let step = tree_rule(&mut work, comp[0], &comp)
                .ok_or_else(|| SolveError::Stuck("tree with a k-path admits no reduction".into()))?;
            trace.steps.push(step);
            continue;
        }
        let report = recognize(&work.g)?;
        if let Some(w) = report.witness {
            return Err(SolveError::Stuck(format!("reduced graph left the class: {w}")));
        }
        let s = report
            .blocks
            .into_iter()
            .find_map(|b| match b.class {
                BlockClass::Subdivision(s) => Some(s),
                _ => None,
            })
            .ok_or_else(|| SolveError::Stuck("graph with a cycle has no subdivision block".into()))?;
        trace.steps.push(subdivision_step(&mut work, &s)?);
    }
    Solution::from_trace(g, k, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::subdivide;
    use crate::oracle::{nu_k, tau_k};
    use crate::Multigraph;

    #[test]
    fn examples() {
        let g = subdivide(&Multigraph::from_graph(&Graph::complete(4)), 3).unwrap();
        let s = solve_hk_prime(&g, 3).unwrap();
        assert_eq!(s.value, 4);
        assert_eq!(s.trace.steps[0].rule, ReductionRule::SubdivisionRule);

        // two triangles sharing a vertex, 5-subdivided
        let bowtie = Multigraph::new(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]).unwrap();
        let g = subdivide(&bowtie, 5).unwrap();
        let s = solve_hk_prime(&g, 5).unwrap();
        assert_eq!(s.value, 5);

        // C9 with a pendant path 9-10 at vertex 0
        let g = Graph::new(11, (0..9).map(|i| (i, (i + 1) % 9)).chain([(0, 9), (9, 10)])).unwrap();
        let s = solve_hk_prime(&g, 3).unwrap();
        assert_eq!(s.value, nu_k(&g, 3).unwrap().0);
        assert_eq!(s.value, tau_k(&g, 3).unwrap().0);
        assert_eq!(s.value, 3);
    }

    #[test]
    fn rejects_non_members_and_even_k() {
        assert!(matches!(
            solve_hk_prime(&Graph::cycle(5), 3),
            Err(SolveError::NotMember(_))
        ));
        assert_eq!(solve_hk_prime(&Graph::cycle(8), 4), Err(SolveError::InvalidK(4)));
    }
}
