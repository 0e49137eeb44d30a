//! 3SAT-based instance generators with witness builders, assignment
//! extraction and a small brute-force SAT oracle.
//!
//! Variable order of the main system (0-based positions):
//! `x1..x2n, gamma, Delta, y1, y2, d1..dn, s`, then `y12, y22` when the cubic
//! constraint is lifted to quadratics, then `z1, z2` for the superoptimality
//! problem. The literal `+j` of a clause refers to `x_j`, the literal `-j` to `x_{n+j}`.

mod cnf;
mod construct;
mod sat;
mod witness;

pub use cnf::{parse_dimacs, Assignment, CnfFormula};
pub use construct::{
    build_cubic_system, build_np_hard_system, build_superopt_problem, build_unbounded_instance,
    c_polynomial, CubicLayout, NpLayout, OptProblem, UnboundedLayout,
};
pub use sat::{brute_force_sat, MAX_BRUTE_FORCE_VARS};
pub use witness::{
    check_superoptimality, extend_quadratized, extract_assignment, find_y_hat, h_value,
    project_quadratized, unbounded_ray_always, unbounded_ray_satisfiable, witness_always,
    witness_cubic_satisfiable, witness_epsilon, witness_satisfiable, SuperoptReport, Y_TILDE,
};
