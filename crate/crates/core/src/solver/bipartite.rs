use serde::Serialize;
use std::collections::VecDeque;

use super::SolveError;
use crate::oracle::{validate_certificates, KMatching, KPath, KVertexCover};
use crate::{Graph, Multigraph};

/// Maximum matching and minimum vertex cover of equal size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartiteCertificate {
    /// Edge ids of the matching, ascending.
    pub matching: Vec<usize>,
    /// Cover vertices, ascending.
    pub cover: Vec<usize>,
}

impl BipartiteCertificate {
    pub fn size(&self) -> usize {
        self.matching.len()
    }
}

/// Augmenting-path matching on a bipartite multigraph (`side[v]` is the
/// colour of `v`; parallel edges are harmless, loops are rejected). The
/// cover is `(left - Z) + (right ∩ Z)` where `Z` is everything reachable
/// from unmatched left vertices along alternating paths.
pub fn bipartite_matching(h: &Multigraph, side: &[bool]) -> Result<BipartiteCertificate, SolveError> {
    let n = h.n();
    if side.len() != n {
        return Err(SolveError::NotBipartite);
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(u, v)) in h.edges().iter().enumerate() {
        if side[u] == side[v] {
            return Err(SolveError::BadBipartition(u, v));
        }
        let (l, r) = if side[u] { (v, u) } else { (u, v) };
        adj[l].push((r, id));
    }
    // mate[v] = (partner, edge id)
    let mut mate: Vec<Option<(usize, usize)>> = vec![None; n];
    fn augment(l: usize, adj: &[Vec<(usize, usize)>], mate: &mut [Option<(usize, usize)>], seen: &mut [bool]) -> bool {
        for &(r, id) in &adj[l] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let free = match mate[r] {
                None => true,
                Some((l2, _)) => augment(l2, adj, mate, seen),
            };
            if free {
                mate[r] = Some((l, id));
                mate[l] = Some((r, id));
                return true;
            }
        }
        false
    }
    for l in (0..n).filter(|&v| !side[v]) {
        let mut seen = vec![false; n];
        augment(l, &adj, &mut mate, &mut seen);
    }

    let mut reached = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| !side[v] && mate[v].is_none()).collect();
    for &l in &queue {
        reached[l] = true;
    }
    while let Some(l) = queue.pop_front() {
        for &(r, id) in &adj[l] {
            if reached[r] || mate[l].is_some_and(|(_, e)| e == id) {
                continue;
            }
            reached[r] = true;
            if let Some((l2, _)) = mate[r] {
                if !reached[l2] {
                    reached[l2] = true;
                    queue.push_back(l2);
                }
            }
        }
    }
    let cover: Vec<usize> = (0..n)
        .filter(|&v| side[v] == reached[v])
        .filter(|&v| h.degree(v) > 0)
        .collect();
    let mut matching: Vec<usize> = (0..n)
        .filter(|&v| !side[v])
        .filter_map(|v| mate[v].map(|(_, id)| id))
        .collect();
    matching.sort_unstable();
    debug_assert_eq!(matching.len(), cover.len());
    Ok(BipartiteCertificate { matching, cover })
}

/// `k = 2` on a bipartite graph: 2-paths are edges, so a maximum matching
/// and a minimum vertex cover are the certificates.
pub fn solve_bipartite_k2(g: &Graph) -> Result<(KMatching, KVertexCover), SolveError> {
    let side = g.bipartition().ok_or(SolveError::NotBipartite)?;
    let cert = bipartite_matching(&Multigraph::from_graph(g), &side)?;
    let paths = cert
        .matching
        .iter()
        .map(|&e| {
            let (u, v) = g.edges()[e];
            KPath::new(g, vec![u, v])
        })
        .collect::<Result<Vec<_>, _>>()?;
    let matching = KMatching::new(paths);
    let cover = KVertexCover::new(cert.cover);
    validate_certificates(g, 2, &matching, &cover)?;
    Ok((matching, cover))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{nu_k, tau_k};

    fn check(h: &Multigraph) -> BipartiteCertificate {
        let side = h.bipartition().unwrap();
        let c = bipartite_matching(h, &side).unwrap();
        let mut used = vec![false; h.n()];
        for &e in &c.matching {
            let (u, v) = h.edges()[e];
            assert!(!used[u] && !used[v]);
            used[u] = true;
            used[v] = true;
        }
        for &(u, v) in h.edges() {
            assert!(c.cover.contains(&u) || c.cover.contains(&v));
        }
        assert_eq!(c.matching.len(), c.cover.len());
        c
    }

    #[test]
    fn examples() {
        let c = check(&Multigraph::from_graph(&Graph::complete_bipartite(2, 3)));
        assert_eq!(c.size(), 2);
        assert_eq!(c.cover, vec![0, 1]);
        assert_eq!(check(&Multigraph::from_graph(&Graph::cycle(6))).size(), 3);
        assert_eq!(check(&Multigraph::from_graph(&Graph::path(4))).size(), 2);
        let theta = Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(check(&theta).size(), 1);
    }

    #[test]
    fn rejects_bad_sides() {
        let h = Multigraph::from_graph(&Graph::path(3));
        assert_eq!(
            bipartite_matching(&h, &[false, false, true]),
            Err(SolveError::BadBipartition(0, 1))
        );
        let looped = Multigraph::new(2, [(0, 1), (1, 1)]).unwrap();
        assert!(bipartite_matching(&looped, &[false, true]).is_err());
    }

    #[test]
    fn k2_matches_oracle() {
        for g in [
            Graph::cycle(6),
            Graph::path(5),
            Graph::complete_bipartite(3, 4),
            Graph::star(4),
        ] {
            let (m, c) = solve_bipartite_k2(&g).unwrap();
            assert_eq!(m.len(), nu_k(&g, 2).unwrap().0);
            assert_eq!(c.len(), tau_k(&g, 2).unwrap().0);
        }
        assert_eq!(solve_bipartite_k2(&Graph::cycle(5)), Err(SolveError::NotBipartite));
    }
}
