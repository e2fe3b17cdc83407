//! Exhaustive checks over small graphs produced by the generator.

use std::collections::BTreeSet;

use rayon::prelude::*;

use kpath_core::graph::delete_vertices;
use kpath_core::lp::lp_extract_certificates;
use kpath_core::oracle::{in_gk, nu_k, tau_k, validate_certificates};
use kpath_core::recognition::{recognize_h3, recognize_h4, recognize_hk_prime, BlockClass};
use kpath_core::solver::{solve_h4, solve_hk_prime, Solution};
use kpath_core::Graph;
use kpath_harness::generate_hereditary;

fn flat(levels: Vec<Vec<Graph>>) -> Vec<Graph> {
    levels.into_iter().flatten().collect()
}

fn all_graphs(n_max: usize) -> Vec<Graph> {
    flat(generate_hereditary(n_max, |_| true))
}

fn check_solution(g: &Graph, k: usize, s: &Solution) -> Result<(), String> {
    validate_certificates(g, k, &s.matching, &s.cover).map_err(|e| e.to_string())?;
    let nu = nu_k(g, k).unwrap().0;
    let tau = tau_k(g, k).unwrap().0;
    if s.value != nu || nu != tau {
        return Err(format!("solver {} nu {nu} tau {tau}", s.value));
    }
    if s.trace.total_delta() != s.value || s.trace.replay() != (s.matching.clone(), s.cover.clone()) {
        return Err("trace does not replay".into());
    }
    Ok(())
}

fn failures(graphs: &[Graph], f: impl Fn(&Graph) -> Result<(), String> + Sync) -> Vec<String> {
    graphs
        .par_iter()
        .filter_map(|g| f(g).err().map(|e| format!("{:?}: {e}", g.edges())))
        .collect()
}

#[test]
fn h4_solver_on_all_members_up_to_ten() {
    let members = flat(generate_hereditary(10, |g| recognize_h4(g).member));
    assert!(members.len() > 1000);
    let bad = failures(&members, |g| {
        if !in_gk(g, 4).unwrap() {
            return Err("recognized but not in G_4".into());
        }
        let s = solve_h4(g).map_err(|e| e.to_string())?;
        check_solution(g, 4, &s)
    });
    assert!(bad.is_empty(), "{} failures, first {}", bad.len(), bad[0]);
}

#[test]
fn hk_prime_solver_on_all_members_up_to_ten() {
    for k in [3, 5] {
        let members = flat(generate_hereditary(10, |g| recognize_hk_prime(g, k).unwrap().member));
        let bad = failures(&members, |g| {
            let s = solve_hk_prime(g, k).map_err(|e| e.to_string())?;
            check_solution(g, k, &s)
        });
        assert!(bad.is_empty(), "k={k}: {} failures, first {}", bad.len(), bad[0]);
    }
}

#[test]
fn h3_recognizers_coincide() {
    let graphs = all_graphs(8);
    let bad = failures(&graphs, |g| {
        let a = recognize_h3(g);
        let b = recognize_hk_prime(g, 3).unwrap();
        if a.member != b.member || a.member != in_gk(g, 3).unwrap() {
            return Err(format!("h3 {} h'3 {}", a.member, b.member));
        }
        Ok(())
    });
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn subdivision_blocks_reconstruct() {
    let members = flat(generate_hereditary(9, |g| recognize_h3(g).member));
    let bad = failures(&members, |g| {
        for b in recognize_h3(g).blocks {
            let BlockClass::Subdivision(s) = b.class else { continue };
            let mut vertices: BTreeSet<usize> = s.h_vertices.iter().copied().collect();
            let mut edges = BTreeSet::new();
            for (e, t) in s.threads.iter().enumerate() {
                let (a, z) = s.h.edges()[e];
                if t.interior.len() != 2 || t.start != s.h_vertices[a] || t.end != s.h_vertices[z] {
                    return Err(format!("thread {e} does not realise its edge"));
                }
                let path = t.vertices();
                vertices.extend(path.iter().copied());
                edges.extend(path.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))));
            }
            let want_vertices: BTreeSet<usize> = b.vertices.iter().copied().collect();
            let want_edges: BTreeSet<(usize, usize)> = g
                .edges()
                .iter()
                .copied()
                .filter(|(u, v)| want_vertices.contains(u) && want_vertices.contains(v))
                .collect();
            if vertices != want_vertices || edges != want_edges {
                return Err(format!("block {:?} is not rebuilt", b.vertices));
            }
        }
        Ok(())
    });
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn vertex_deletion_changes_values_by_at_most_one() {
    let graphs = all_graphs(7);
    let bad = failures(&graphs, |g| {
        for k in 2..=4 {
            let nu = nu_k(g, k).unwrap().0;
            let tau = tau_k(g, k).unwrap().0;
            for v in 0..g.n() {
                let h = delete_vertices(g, &[v]).graph;
                let (nu_h, tau_h) = (nu_k(&h, k).unwrap().0, tau_k(&h, k).unwrap().0);
                if nu_h > nu || nu_h + 1 < nu || tau_h > tau || tau_h + 1 < tau {
                    return Err(format!("k={k} v={v}"));
                }
            }
        }
        Ok(())
    });
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn membership_is_hereditary() {
    let graphs = all_graphs(7);
    let bad = failures(&graphs, |g| {
        let h3 = recognize_h3(g).member;
        let h4 = recognize_h4(g).member;
        for v in 0..g.n() {
            let h = delete_vertices(g, &[v]).graph;
            for k in 2..=4 {
                if in_gk(g, k).unwrap() && !in_gk(&h, k).unwrap() {
                    return Err(format!("in_gk k={k} v={v}"));
                }
            }
            if (h3 && !recognize_h3(&h).member) || (h4 && !recognize_h4(&h).member) {
                return Err(format!("recognizer v={v}"));
            }
        }
        Ok(())
    });
    assert!(bad.is_empty(), "{bad:?}");
}

fn max_matching(g: &Graph) -> usize {
    // first vertex is either unmatched or matched to one of its neighbours
    fn go(g: &Graph, free: u32) -> usize {
        if free == 0 {
            return 0;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        let mut best = go(g, rest);
        for &w in g.neighbors(v) {
            if rest >> w & 1 == 1 {
                best = best.max(1 + go(g, rest & !(1 << w)));
            }
        }
        best
    }
    go(g, (1u32 << g.n()) - 1)
}

fn min_vertex_cover(g: &Graph) -> usize {
    (0u32..1 << g.n())
        .filter(|s| g.edges().iter().all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1))
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

#[test]
fn k2_matches_classical_values() {
    let graphs = all_graphs(8);
    let bad = failures(&graphs, |g| {
        let (nu, tau) = (nu_k(g, 2).unwrap().0, tau_k(g, 2).unwrap().0);
        if nu != max_matching(g) || tau != min_vertex_cover(g) {
            return Err(format!("nu {nu} tau {tau}"));
        }
        Ok(())
    });
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn lp_extraction_on_g4_members() {
    let members: Vec<Graph> = all_graphs(8).into_iter().filter(|g| in_gk(g, 4).unwrap()).collect();
    let bad = failures(&members, |g| {
        let (m, c) = lp_extract_certificates(g, 4).map_err(|e| e.to_string())?;
        validate_certificates(g, 4, &m, &c).map_err(|e| e.to_string())?;
        if m.len() != nu_k(g, 4).unwrap().0 {
            return Err("size differs from the oracle".into());
        }
        Ok(())
    });
    assert!(bad.is_empty(), "{} failures, first {}", bad.len(), bad[0]);
}
