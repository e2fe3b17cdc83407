use serde::Serialize;

use crate::graph::Graph;
use crate::oracle::{enumerate_kpaths, KPath};

/// Vertex versus k-path incidence: `entries[i][j] = 1` iff vertex `rows[i]`
/// lies on path `columns[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceMatrix {
    pub rows: Vec<usize>,
    pub columns: Vec<KPath>,
    pub entries: Vec<Vec<i64>>,
}

pub fn incidence_matrix(g: &Graph, k: usize) -> IncidenceMatrix {
    let columns = enumerate_kpaths(g, k);
    let rows: Vec<usize> = (0..g.n()).collect();
    let entries = rows
        .iter()
        .map(|&u| columns.iter().map(|p| p.vertices().contains(&u) as i64).collect())
        .collect();
    IncidenceMatrix { rows, columns, entries }
}

/// Square submatrix with `|det| >= 2`, given by row and column indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonTuWitness {
    pub rows: Vec<usize>,
    pub columns: Vec<usize>,
    pub determinant: i128,
}

/// Exact integer determinant (fraction-free Bareiss elimination).
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for i in 0..n {
        if a[i][i] == 0 {
            match (i + 1..n).find(|&r| a[r][i] != 0) {
                Some(r) => {
                    a.swap(i, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for r in i + 1..n {
            for c in i + 1..n {
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) / prev;
            }
        }
        prev = a[i][i];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

fn combinations(n: usize, r: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == r {
            return f(cur);
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            if rec(i + 1, n, r, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, r, &mut Vec::with_capacity(r), f)
}

/// Searches square submatrices of order `2..=max_order` (smallest order
/// first, then lexicographic rows and columns) for `|det| >= 2`.
pub fn find_non_tu_witness(m: &IncidenceMatrix, max_order: usize) -> Option<NonTuWitness> {
    let (nr, nc) = (m.entries.len(), m.columns.len());
    let mut found = None;
    for order in 2..=max_order.min(nr).min(nc) {
        combinations(nr, order, &mut |rows| {
            combinations(nc, order, &mut |cols| {
                let sub: Vec<Vec<i64>> = rows
                    .iter()
                    .map(|&r| cols.iter().map(|&c| m.entries[r][c]).collect())
                    .collect();
                let det = determinant(&sub);
                if det.abs() >= 2 {
                    found = Some(NonTuWitness {
                        rows: rows.to_vec(),
                        columns: cols.to_vec(),
                        determinant: det,
                    });
                    return true;
                }
                false
            })
        });
        if found.is_some() {
            break;
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{subdivide, Multigraph};

    /// Cofactor expansion, independent of Bareiss.
    fn cofactor(m: &[Vec<i64>]) -> i128 {
        if m.is_empty() {
            return 1;
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] as i128 * cofactor(&minor)
            })
            .sum()
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let mut seed = 7u64;
        for n in 0..6 {
            for _ in 0..50 {
                let m: Vec<Vec<i64>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                                (seed >> 60) as i64 - 8
                            })
                            .collect()
                    })
                    .collect();
                assert_eq!(determinant(&m), cofactor(&m));
            }
        }
    }

    #[test]
    fn examples() {
        let p3 = incidence_matrix(&Graph::path(3), 3);
        assert_eq!(p3.entries, vec![vec![1], vec![1], vec![1]]);
        assert!(find_non_tu_witness(&p3, 3).is_none());

        let spider = subdivide(&Multigraph::from_graph(&Graph::star(3)), 3).unwrap();
        let m = incidence_matrix(&spider, 3);
        assert!(m.columns.iter().all(|p| p.order() == 3));
        let w = find_non_tu_witness(&m, 3).expect("odd cycle pattern");
        assert_eq!(w.determinant.abs(), 2);
        assert_eq!(w.rows.len(), 3);

        let bip = incidence_matrix(&Graph::complete_bipartite(2, 3), 2);
        assert!(find_non_tu_witness(&bip, 4).is_none());
    }
}
