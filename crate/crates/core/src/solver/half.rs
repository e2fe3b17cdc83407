use super::assign::matching_partner_assignment;
use super::bipartite::bipartite_matching;
use super::SolveError;
use crate::graph::{subdivide_with_threads, Thread};
use crate::oracle::{validate_certificates, KMatching, KPath, KVertexCover};
use crate::{Graph, Multigraph};

/// The path formed by the subdivided edge `e` followed by the interior of
/// the subdivided edge `fe`, which shares an end with `e`.
pub(crate) fn pair_path(threads: &[Thread], e: usize, fe: usize) -> Vec<usize> {
    let te = &threads[e];
    let tf = &threads[fe];
    if tf.start == te.end || tf.end == te.end {
        let mut p = te.vertices();
        p.extend(tf.interior_from(te.end));
        p
    } else {
        debug_assert!(tf.start == te.start || tf.end == te.start);
        let mut p: Vec<usize> = tf.interior_from(te.start);
        p.reverse();
        p.extend(te.vertices());
        p
    }
}

/// Certificates on `Sub_{k/2}(h)` (vertex ids as produced by
/// [`crate::graph::subdivide`]) for a connected bipartite multigraph `h`
/// with a cycle and even `k`: a maximum matching `M` of `h` with an
/// injective partner map `f: M -> E(h) - M` gives `|M|` disjoint k-paths,
/// and a minimum vertex cover of `h` is a k-vertex cover.
pub fn bip_half_subdivision_certificates(h: &Multigraph, k: usize) -> Result<(KMatching, KVertexCover), SolveError> {
    if k < 2 || k % 2 == 1 {
        return Err(SolveError::InvalidK(k));
    }
    if !h.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let side = h.bipartition().ok_or(SolveError::NotBipartite)?;
    if h.cyclomatic_number() == 0 {
        return Err(SolveError::Acyclic);
    }
    let sub = subdivide_with_threads(h, k / 2).map_err(|e| SolveError::Subdivision(e.to_string()))?;
    let (matching, cover) = half_certificates(&sub.graph, h, &side, &sub.threads)?;
    validate_certificates(&sub.graph, k, &matching, &cover)?;
    Ok((matching, cover))
}

fn half_certificates(
    g: &Graph,
    h: &Multigraph,
    side: &[bool],
    threads: &[Thread],
) -> Result<(KMatching, KVertexCover), SolveError> {
    let cert = bipartite_matching(h, side)?;
    let (f, _) = matching_partner_assignment(h, &cert.matching, &[])?;
    let paths = cert
        .matching
        .iter()
        .zip(&f)
        .map(|(&e, &fe)| KPath::new(g, pair_path(threads, e, fe)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((KMatching::new(paths), KVertexCover::new(cert.cover)))
}
