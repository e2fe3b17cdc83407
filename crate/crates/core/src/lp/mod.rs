//! Exact linear programming: the fractional packing/covering relaxations
//! `nu*_k` and `tau*_k`, certificate extraction driven by LP values, and
//! vertex/path incidence matrices with a total-unimodularity probe.

mod extract;
mod rational;
mod relax;
mod simplex;
mod tu;

pub use extract::{lp_extract_certificates, lp_extract_certificates_with, ExtractError};
pub use rational::Rational;
pub use relax::{
    covering_lp, nu_star, nu_star_with, packing_lp, path_vertex_sets, tau_star, tau_star_with, PathLp, RelaxationError,
};
pub use simplex::{solve_lp, Constraint, LpError, LpProblem, LpSolution, Relation, Sense};
pub use tu::{determinant, find_non_tu_witness, incidence_matrix, IncidenceMatrix, NonTuWitness};
