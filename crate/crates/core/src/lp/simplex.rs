//! Dense-tableau simplex over exact rationals with least-index pivoting.

use serde::Serialize;
use std::fmt::Write as _;
use thiserror::Error;

use super::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `sense c^T x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("constraint {row} has {got} coefficients, expected {expected}")]
    Dimension { row: usize, got: usize, expected: usize },
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("solution check failed: {0}")]
    Verification(String),
}

/// Optimal primal/dual pair. `dual[i]` belongs to constraint `i`; its sign
/// follows the usual convention (for a maximisation, `>= 0` on `<=` rows and
/// `<= 0` on `>=` rows; reversed for a minimisation).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LpSolution {
    pub value: Rational,
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
    /// Basic column per tableau row: `j < n` is variable `x_j`, `n + r` is
    /// the slack of internal row `r` (a `=` row occupies two internal rows).
    pub basis: Vec<usize>,
}

impl LpProblem {
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        LpProblem {
            sense,
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    fn check_dims(&self) -> Result<(), LpError> {
        for (row, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != self.num_vars() {
                return Err(LpError::Dimension {
                    row,
                    got: c.coeffs.len(),
                    expected: self.num_vars(),
                });
            }
        }
        Ok(())
    }

    /// Human-readable dump in the usual LP text layout, fractions as `p/q`.
    pub fn to_lp_text(&self) -> String {
        fn term_list(coeffs: &[Rational]) -> String {
            let mut s = String::new();
            for (j, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let sign = if c.is_negative() { "-" } else { "+" };
                if s.is_empty() {
                    if c.is_negative() {
                        s.push_str("- ");
                    }
                } else {
                    write!(s, " {sign} ").unwrap();
                }
                let a = c.abs();
                if a == Rational::one() {
                    write!(s, "x{j}").unwrap();
                } else {
                    write!(s, "{a} x{j}").unwrap();
                }
            }
            if s.is_empty() {
                s.push('0');
            }
            s
        }
        let mut out = String::new();
        out.push_str(match self.sense {
            Sense::Maximize => "maximize\n",
            Sense::Minimize => "minimize\n",
        });
        writeln!(out, " obj: {}", term_list(&self.objective)).unwrap();
        out.push_str("subject to\n");
        for (i, c) in self.constraints.iter().enumerate() {
            let rel = match c.relation {
                Relation::Le => "<=",
                Relation::Ge => ">=",
                Relation::Eq => "=",
            };
            writeln!(out, " c{i}: {} {rel} {}", term_list(&c.coeffs), c.rhs).unwrap();
        }
        out.push_str("bounds\n");
        for j in 0..self.num_vars() {
            writeln!(out, " x{j} >= 0").unwrap();
        }
        out.push_str("end\n");
        out
    }
}

/// Tableau for `max c^T x, A x <= b, x >= 0` with one slack per row.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Reduced costs `z_j - c_j`; optimal when all are `>= 0`.
    cost: Vec<Rational>,
    value: Rational,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        if p != Rational::one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x / &p;
                }
            }
            self.rhs[r] = &self.rhs[r] / &p;
        }
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&c| !pivot_row[c].is_zero()).collect();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let f = self.rows[i][j].clone();
            for &c in &nz {
                self.rows[i][c] = &self.rows[i][c] - &(&f * &pivot_row[c]);
            }
            self.rhs[i] = &self.rhs[i] - &(&f * &pivot_rhs);
        }
        if !self.cost[j].is_zero() {
            let f = self.cost[j].clone();
            for &c in &nz {
                self.cost[c] = &self.cost[c] - &(&f * &pivot_row[c]);
            }
            self.value = &self.value - &(&f * &pivot_rhs);
        }
        self.basis[r] = j;
    }

    /// Primal simplex from a feasible basis, Bland's rule.
    fn primal(&mut self) -> Result<(), LpError> {
        loop {
            let Some(j) = (0..self.cost.len()).find(|&j| self.cost[j].is_negative()) else {
                return Ok(());
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                if !self.rows[r][j].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / &self.rows[r][j];
                let better = match &best {
                    None => true,
                    Some((b, br)) => ratio < *br || (ratio == *br && self.basis[r] < self.basis[*b]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, j),
                None => return Err(LpError::Unbounded),
            }
        }
    }

    /// Dual simplex from a dual feasible basis (all reduced costs `>= 0`).
    fn dual(&mut self) -> Result<(), LpError> {
        loop {
            let leaving = (0..self.rows.len())
                .filter(|&r| self.rhs[r].is_negative())
                .min_by_key(|&r| self.basis[r]);
            let Some(r) = leaving else {
                return Ok(());
            };
            let mut best: Option<(usize, Rational)> = None;
            for j in 0..self.cost.len() {
                if !self.rows[r][j].is_negative() {
                    continue;
                }
                let ratio = &self.cost[j] / &(-&self.rows[r][j]);
                if best.as_ref().is_none_or(|(_, b)| ratio < *b) {
                    best = Some((j, ratio));
                }
            }
            match best {
                Some((j, _)) => self.pivot(r, j),
                None => return Err(LpError::Infeasible),
            }
        }
    }

    /// Phase 1 with a single artificial column, then phase 2 on `cost`.
    fn two_phase(&mut self) -> Result<(), LpError> {
        let width = self.cost.len();
        let original_cost = std::mem::replace(&mut self.cost, vec![Rational::zero(); width + 1]);
        let original_value = std::mem::take(&mut self.value);
        for row in self.rows.iter_mut() {
            row.push(Rational::from_integer(-1));
        }
        // maximise -x0
        self.cost[width] = Rational::one();
        let worst = (0..self.rows.len())
            .min_by(|&a, &b| self.rhs[a].cmp(&self.rhs[b]).then(a.cmp(&b)))
            .unwrap();
        self.pivot(worst, width);
        self.primal()?;
        if !self.value.is_zero() {
            return Err(LpError::Infeasible);
        }
        if let Some(r) = (0..self.rows.len()).find(|&r| self.basis[r] == width) {
            // Degenerate: x0 = 0 is basic; swap in any usable column.
            match (0..width).find(|&j| !self.rows[r][j].is_zero()) {
                Some(j) => self.pivot(r, j),
                None => {
                    // Redundant row; zero it so it never constrains phase 2.
                    self.rows[r] = vec![Rational::zero(); width + 1];
                    self.rows[r][width] = Rational::one();
                }
            }
        }
        let artificial_basic = self.basis.contains(&width);
        for row in self.rows.iter_mut() {
            row.pop();
        }
        if artificial_basic {
            let r = self.basis.iter().position(|&b| b == width).unwrap();
            self.rows.remove(r);
            self.rhs.remove(r);
            self.basis.remove(r);
        }
        // Re-price the original objective against the current basis.
        self.cost = original_cost;
        self.value = original_value;
        for r in 0..self.rows.len() {
            let b = self.basis[r];
            if !self.cost[b].is_zero() {
                let f = self.cost[b].clone();
                for c in 0..width {
                    if !self.rows[r][c].is_zero() {
                        self.cost[c] = &self.cost[c] - &(&f * &self.rows[r][c]);
                    }
                }
                self.value = &self.value - &(&f * &self.rhs[r]);
            }
        }
        self.primal()
    }
}

/// Exact optimum of `p` with primal and dual certificates.
pub fn solve_lp(p: &LpProblem) -> Result<LpSolution, LpError> {
    p.check_dims()?;
    let n = p.num_vars();
    let flip = p.sense == Sense::Minimize;
    // Internal `<=` rows: (source constraint, sign applied to it).
    let mut internal: Vec<(usize, bool)> = Vec::new();
    for (i, c) in p.constraints.iter().enumerate() {
        match c.relation {
            Relation::Le => internal.push((i, false)),
            Relation::Ge => internal.push((i, true)),
            Relation::Eq => {
                internal.push((i, false));
                internal.push((i, true));
            }
        }
    }
    let m = internal.len();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (r, &(i, neg)) in internal.iter().enumerate() {
        let c = &p.constraints[i];
        let mut row: Vec<Rational> = if neg {
            c.coeffs.iter().map(|x| -x).collect()
        } else {
            c.coeffs.clone()
        };
        row.extend((0..m).map(|s| if s == r { Rational::one() } else { Rational::zero() }));
        rows.push(row);
        rhs.push(if neg { -&c.rhs } else { c.rhs.clone() });
    }
    let mut cost: Vec<Rational> = p.objective.iter().map(|c| if flip { c.clone() } else { -c }).collect();
    cost.extend((0..m).map(|_| Rational::zero()));
    let mut t = Tableau {
        rows,
        rhs,
        cost,
        value: Rational::zero(),
        basis: (n..n + m).collect(),
    };

    let primal_feasible = t.rhs.iter().all(|b| !b.is_negative());
    let dual_feasible = t.cost.iter().all(|c| !c.is_negative());
    if primal_feasible {
        t.primal()?;
    } else if dual_feasible {
        t.dual()?;
    } else {
        t.two_phase()?;
    }

    let mut primal = vec![Rational::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            primal[b] = t.rhs[r].clone();
        }
    }
    let mut dual = vec![Rational::zero(); p.constraints.len()];
    for (r, &(i, neg)) in internal.iter().enumerate() {
        let w = &t.cost[n + r];
        let signed = if neg != flip { -w } else { w.clone() };
        dual[i] = &dual[i] + &signed;
    }
    let value = if flip { -t.value } else { t.value };
    Ok(LpSolution {
        value,
        primal,
        dual,
        basis: t.basis,
    })
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

impl LpSolution {
    /// Exact check of primal and dual feasibility, complementary slackness
    /// and equality of both objectives with `value`.
    pub fn verify(&self, p: &LpProblem) -> Result<(), LpError> {
        let fail = |msg: String| Err(LpError::Verification(msg));
        let max = p.sense == Sense::Maximize;
        if self.primal.len() != p.num_vars() || self.dual.len() != p.constraints.len() {
            return fail("dimension mismatch".into());
        }
        if let Some(j) = self.primal.iter().position(|x| x.is_negative()) {
            return fail(format!("x{j} negative"));
        }
        for (i, c) in p.constraints.iter().enumerate() {
            let lhs = dot(&c.coeffs, &self.primal);
            let ok = match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Eq => lhs == c.rhs,
            };
            if !ok {
                return fail(format!("constraint c{i} violated"));
            }
            let y = &self.dual[i];
            let sign_ok = match (c.relation, max) {
                (Relation::Eq, _) => true,
                (Relation::Le, true) | (Relation::Ge, false) => !y.is_negative(),
                (Relation::Ge, true) | (Relation::Le, false) => !y.is_positive(),
            };
            if !sign_ok {
                return fail(format!("dual y{i} has the wrong sign"));
            }
            if !(y * &(&lhs - &c.rhs)).is_zero() {
                return fail(format!("complementary slackness fails on c{i}"));
            }
        }
        for j in 0..p.num_vars() {
            let col: Vec<Rational> = p.constraints.iter().map(|c| c.coeffs[j].clone()).collect();
            let reduced = &dot(&col, &self.dual) - &p.objective[j];
            let ok = if max {
                !reduced.is_negative()
            } else {
                !reduced.is_positive()
            };
            if !ok {
                return fail(format!("dual constraint for x{j} violated"));
            }
            if !(&reduced * &self.primal[j]).is_zero() {
                return fail(format!("complementary slackness fails on x{j}"));
            }
        }
        let primal_value = dot(&p.objective, &self.primal);
        let rhs: Vec<Rational> = p.constraints.iter().map(|c| c.rhs.clone()).collect();
        let dual_value = dot(&rhs, &self.dual);
        if primal_value != self.value || dual_value != self.value {
            return fail(format!(
                "objectives differ: primal {primal_value}, dual {dual_value}, reported {}",
                self.value
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    fn rs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| r(x)).collect()
    }

    #[test]
    fn textbook_max() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6).
        let mut p = LpProblem::new(Sense::Maximize, rs(&[3, 5]));
        p.push(rs(&[1, 0]), Relation::Le, r(4));
        p.push(rs(&[0, 2]), Relation::Le, r(12));
        p.push(rs(&[3, 2]), Relation::Le, r(18));
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.value, r(36));
        assert_eq!(s.primal, rs(&[2, 6]));
        s.verify(&p).unwrap();
    }

    #[test]
    fn covering_via_dual_simplex() {
        // Triangle edge cover by vertices, fractional: all 1/2.
        let mut p = LpProblem::new(Sense::Minimize, rs(&[1, 1, 1]));
        p.push(rs(&[1, 1, 0]), Relation::Ge, r(1));
        p.push(rs(&[0, 1, 1]), Relation::Ge, r(1));
        p.push(rs(&[1, 0, 1]), Relation::Ge, r(1));
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.value, Rational::new(3, 2));
        s.verify(&p).unwrap();
    }

    #[test]
    fn equality_and_mixed_need_two_phases() {
        // min x + 2y, x + y = 3, x - y >= -1, x <= 5 -> x=3? cost 3 at (3,0).
        let mut p = LpProblem::new(Sense::Minimize, rs(&[1, 2]));
        p.push(rs(&[1, 1]), Relation::Eq, r(3));
        p.push(rs(&[1, -1]), Relation::Ge, r(-1));
        p.push(rs(&[1, 0]), Relation::Le, r(5));
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.value, r(3));
        s.verify(&p).unwrap();

        // max x - y with x - y >= 1 forced and x + y <= 4 -> 4 at (4, 0).
        let mut q = LpProblem::new(Sense::Maximize, rs(&[1, -1]));
        q.push(rs(&[1, -1]), Relation::Ge, r(1));
        q.push(rs(&[1, 1]), Relation::Le, r(4));
        q.push(rs(&[-1, 0]), Relation::Le, r(-2));
        let s = solve_lp(&q).unwrap();
        assert_eq!(s.value, r(4));
        s.verify(&q).unwrap();
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut p = LpProblem::new(Sense::Maximize, rs(&[1]));
        p.push(rs(&[1]), Relation::Le, r(1));
        p.push(rs(&[1]), Relation::Ge, r(2));
        assert_eq!(solve_lp(&p), Err(LpError::Infeasible));
        let mut q = LpProblem::new(Sense::Maximize, rs(&[1, 1]));
        q.push(rs(&[1, -1]), Relation::Le, r(1));
        assert_eq!(solve_lp(&q), Err(LpError::Unbounded));
        let mut bad = LpProblem::new(Sense::Maximize, rs(&[1, 1]));
        bad.push(rs(&[1]), Relation::Le, r(1));
        assert!(matches!(solve_lp(&bad), Err(LpError::Dimension { .. })));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example, which cycles under the largest-coefficient rule.
        let q = |n, d| Rational::new(n, d);
        let mut p = LpProblem::new(Sense::Maximize, vec![q(3, 4), r(-150), q(1, 50), r(-6)]);
        p.push(vec![q(1, 4), r(-60), q(-1, 25), r(9)], Relation::Le, r(0));
        p.push(vec![q(1, 2), r(-90), q(-1, 50), r(3)], Relation::Le, r(0));
        p.push(vec![r(0), r(0), r(1), r(0)], Relation::Le, r(1));
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.value, q(1, 20));
        s.verify(&p).unwrap();
    }

    #[test]
    fn lp_text_dump() {
        let mut p = LpProblem::new(Sense::Maximize, vec![r(1), Rational::new(1, 2)]);
        p.push(rs(&[1, -1]), Relation::Le, Rational::new(3, 4));
        let text = p.to_lp_text();
        assert!(text.contains("obj: x0 + 1/2 x1"));
        assert!(text.contains("c0: x0 - x1 <= 3/4"));
    }
}
