use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::brute_force_sat;
use super::cnf::{Assignment, CnfFormula};
use super::construct::{build_superopt_problem, CubicLayout, NpLayout, UnboundedLayout};
use crate::config::precision_cap;
use crate::error::{Error, Result};
use crate::gadgets::R_GAMMA_BOUNDS;
use crate::ratcore::{format_rational, int, pow2, rat};
use crate::{AlgebraicElement, Extension};

/// The point `(-2.74, 1.588)` as `(p, q)` pairs; `h` is below -7 there.
pub const Y_TILDE: [(i64, i64); 2] = [(-137, 50), (397, 250)];

const FIND_Y_HAT_CAP: u64 = 1 << 20;

pub fn h_value(y1: &BigRational, y2: &BigRational) -> BigRational {
    int(2) * y1 * y1 * y1 + y2 * y2 * y2 - int(6) * y1 * y2 + int(4)
}

fn in_r0(y1: &BigRational, y2: &BigRational) -> bool {
    let [a, b, c, d] = R_GAMMA_BOUNDS.map(|(p, q)| rat(p, q));
    &a <= y1 && y1 <= &b && &c <= y2 && y2 <= &d
}

/// A rational `y` in `R_0` with `h(y) <= bound`, from truncating
/// `(2^{1/3}, 2^{2/3})` to `k` fractional bits with `k` doubling.
pub fn find_y_hat(bound: &BigRational) -> Result<[BigRational; 2]> {
    if !bound.is_positive() {
        return Err(Error::Precondition("find_y_hat needs a positive bound".into()));
    }
    let cap = precision_cap(FIND_Y_HAT_CAP);
    let mut k: u64 = 8;
    loop {
        let scale: BigInt = BigInt::from(1) << (3 * k) as usize;
        let den: BigInt = BigInt::from(1) << k as usize;
        let y1 = BigRational::new((&scale * BigInt::from(2)).cbrt(), den.clone());
        let y2 = BigRational::new((&scale * BigInt::from(4)).cbrt(), den);
        if in_r0(&y1, &y2) && &h_value(&y1, &y2) <= bound {
            log::debug!("find_y_hat: accepted at {k} bits");
            return Ok([y1, y2]);
        }
        if k >= cap {
            return Err(Error::PrecisionCap {
                cap,
                context: format!("no truncation of y* reached h <= {}", format_rational(bound)),
            });
        }
        k = (k * 2).min(cap);
    }
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    crate::error::check_dim(expected, got)
}

fn x_from(a: &Assignment) -> Vec<BigRational> {
    let mut x: Vec<BigRational> = a.0.iter().map(|&b| int(if b { 1 } else { -1 })).collect();
    let neg: Vec<BigRational> = x.iter().map(|v| -v).collect();
    x.extend(neg);
    x
}

fn require_sat(cnf: &CnfFormula, a: &Assignment) -> Result<()> {
    if a.0.len() != cnf.num_vars {
        return Err(Error::DimensionMismatch { expected: cnf.num_vars, got: a.0.len() });
    }
    if !a.satisfies(cnf) {
        return Err(Error::Precondition("assignment does not satisfy the formula".into()));
    }
    Ok(())
}

/// The linear-size witness for a satisfying assignment: `x = +-1`,
/// `gamma = 4`, `Delta = 0`, `y = (-137/50, 397/250)`, `d = s = 0`.
pub fn witness_satisfiable(cnf: &CnfFormula, a: &Assignment) -> Result<Vec<BigRational>> {
    require_sat(cnf, a)?;
    let n = cnf.num_vars;
    let lay = NpLayout::new(n, false);
    let mut p = vec![int(0); lay.num_vars()];
    p[..2 * n].clone_from_slice(&x_from(a));
    p[lay.gamma()] = int(4);
    p[lay.y1()] = rat(Y_TILDE[0].0, Y_TILDE[0].1);
    p[lay.y2()] = rat(Y_TILDE[1].0, Y_TILDE[1].1);
    Ok(p)
}

/// The always-available witness: `x_j = 1 = -x_{n+j}`, `Delta = 2`, `gamma = 0`,
/// `d_k = 2^{-2^{k-1}}`, `s = 2^{-2^n}`, and `y` a truncation of `y*` with `h(y) <= s`.
pub fn witness_always(cnf: &CnfFormula) -> Result<Vec<BigRational>> {
    let n = cnf.num_vars;
    let lay = NpLayout::new(n, false);
    let mut p = vec![int(0); lay.num_vars()];
    for j in 0..n {
        p[j] = int(1);
        p[n + j] = int(-1);
    }
    p[lay.delta()] = int(2);
    for k in 0..n {
        p[lay.d(k)] = pow2(-(1i64 << k));
    }
    let s = pow2(-(1i64 << n));
    let [y1, y2] = find_y_hat(&s)?;
    p[lay.y1()] = y1;
    p[lay.y2()] = y2;
    p[lay.s()] = s;
    Ok(p)
}

/// The point `omega(eps)` for the superoptimality problem: as [`witness_always`]
/// but with `d = 0`, `s = 0`, `y` with `h(y) <= eps`, and `(z1, z2) = (0, 2)`.
pub fn witness_epsilon(cnf: &CnfFormula, eps: &BigRational) -> Result<Vec<BigRational>> {
    if !eps.is_positive() || eps >= &int(1) {
        return Err(Error::Precondition("eps must lie in (0, 1)".into()));
    }
    let n = cnf.num_vars;
    let lay = NpLayout { n, quadratized: false, with_z: true };
    let mut p = vec![int(0); lay.num_vars()];
    for j in 0..n {
        p[j] = int(1);
        p[n + j] = int(-1);
    }
    p[lay.delta()] = int(2);
    let [y1, y2] = find_y_hat(eps)?;
    p[lay.y1()] = y1;
    p[lay.y2()] = y2;
    p[lay.z2().unwrap()] = int(2);
    Ok(p)
}

/// Cubic-system witness for a satisfying assignment (same values, no `d`, `s`).
pub fn witness_cubic_satisfiable(cnf: &CnfFormula, a: &Assignment) -> Result<Vec<BigRational>> {
    require_sat(cnf, a)?;
    let n = cnf.num_vars;
    let lay = CubicLayout { n };
    let mut p = x_from(a);
    p.resize(lay.num_vars(), int(0));
    p[lay.gamma()] = int(4);
    p[lay.y1()] = rat(Y_TILDE[0].0, Y_TILDE[0].1);
    p[lay.y2()] = rat(Y_TILDE[1].0, Y_TILDE[1].1);
    Ok(p)
}

/// `w_j` is true exactly when `x_j > 0`.
pub fn extract_assignment(n: usize, point: &[BigRational]) -> Result<Assignment> {
    if point.len() < 2 * n {
        return Err(Error::DimensionMismatch { expected: 2 * n, got: point.len() });
    }
    Ok(Assignment(point[..n].iter().map(|x| x.is_positive()).collect()))
}

/// Appends `y12 = y1^2`, `y22 = y2^2` to a point of the unlifted system.
pub fn extend_quadratized(n: usize, point: &[BigRational]) -> Result<Vec<BigRational>> {
    let lay = NpLayout::new(n, false);
    check_len(lay.num_vars(), point.len())?;
    let mut p = point.to_vec();
    let (y1, y2) = (point[lay.y1()].clone(), point[lay.y2()].clone());
    p.push(&y1 * &y1);
    p.push(&y2 * &y2);
    Ok(p)
}

/// Drops `y12`, `y22` from a point of the lifted system.
pub fn project_quadratized(n: usize, point: &[BigRational]) -> Result<Vec<BigRational>> {
    let lay = NpLayout::new(n, true);
    check_len(lay.num_vars(), point.len())?;
    Ok(point[..lay.num_vars() - 2].to_vec())
}

/// Direction of the ray `y = d~ y3`, `x_j = y3 = -x_{n+j}`, `Delta = 2 y3`,
/// `gamma = 0` at `y3 = 1`, with `d~ = (2^{1/3}, 2^{2/3}, 1)`.
pub fn unbounded_ray_always(cnf: &CnfFormula) -> Result<Vec<AlgebraicElement>> {
    let n = cnf.num_vars;
    let lay = UnboundedLayout { n };
    let ext = Extension::cbrt(2)?;
    let t = AlgebraicElement::generator(&ext);
    let r = |q: BigRational| AlgebraicElement::rational(q);
    let mut v = vec![r(int(0)); lay.num_vars()];
    for j in 0..n {
        v[j] = r(int(1));
        v[n + j] = r(int(-1));
    }
    v[lay.delta()] = r(int(2));
    v[lay.y(1)] = t.clone() * t.clone();
    v[lay.y(0)] = t;
    v[lay.y(2)] = r(int(1));
    Ok(v)
}

/// Rational direction for a satisfying assignment: `x = +-1` with
/// `x_{n+j} = -x_j`, `gamma = 4`, `Delta = 0`, `y = (-137/50, 397/250, 1)`.
pub fn unbounded_ray_satisfiable(cnf: &CnfFormula, a: &Assignment) -> Result<Vec<BigRational>> {
    require_sat(cnf, a)?;
    let n = cnf.num_vars;
    let lay = UnboundedLayout { n };
    let mut v = x_from(a);
    v.resize(lay.num_vars(), int(0));
    v[lay.gamma()] = int(4);
    v[lay.y(0)] = rat(Y_TILDE[0].0, Y_TILDE[0].1);
    v[lay.y(1)] = rat(Y_TILDE[1].0, Y_TILDE[1].1);
    v[lay.y(2)] = int(1);
    Ok(v)
}

/// Exact facts about a candidate point of the superoptimality problem.
///
/// With the formula satisfiable the optimum is exactly 2. Otherwise only the
/// bound `Z2*^2 <= 18/5` is known, so comparisons against `Z2*` are reported
/// as `None` when that bound cannot decide them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuperoptReport {
    pub satisfiable: bool,
    pub infeasibility: String,
    pub objective: String,
    pub s: String,
    /// `Some(2)` when satisfiable.
    pub z2_star: Option<String>,
    /// Upper bound on `Z2*^2`.
    pub z2_star_sq_upper: String,
    /// `z2 >= (2/1.9) Z2*`.
    pub ratio_on_z2: Option<bool>,
    /// `s >= (2/1.9) Z2*`, the comparison as literally stated.
    pub ratio_on_s: Option<bool>,
    /// `z2 - Z2* >= 1/10`.
    pub margin_tenth: Option<bool>,
    /// `z2 - Z2* >= 1/5`.
    pub margin_fifth: Option<bool>,
}

/// `v >= c * Z2*` given `Z2*^2 <= ub` (and `Z2* >= 0`): certified true when `v >= 0` and `v^2 >= c^2 ub`.
fn certify_ge(v: &BigRational, c: &BigRational, ub: &BigRational) -> Option<bool> {
    (!v.is_negative() && v * v >= c * c * ub).then_some(true)
}

/// Desk-scale report: satisfiability is decided by [`brute_force_sat`].
pub fn check_superoptimality(cnf: &CnfFormula, point: &[BigRational]) -> Result<SuperoptReport> {
    let prob = build_superopt_problem(cnf)?;
    let infeas = prob.system.infeasibility(point)?;
    let obj = prob.objective.eval(point)?;
    let lay = NpLayout { n: cnf.num_vars, quadratized: false, with_z: true };
    let s = point[lay.s()].clone();
    let sat = brute_force_sat(cnf)?.is_some();
    let ratio = rat(20, 19);
    let (star, ub, on_z2, on_s, tenth, fifth) = if sat {
        let two = int(2);
        (
            Some(format_rational(&two)),
            int(4),
            Some(obj >= &ratio * &two),
            Some(s >= &ratio * &two),
            Some(&obj - &two >= rat(1, 10)),
            Some(&obj - &two >= rat(1, 5)),
        )
    } else {
        let ub = rat(18, 5);
        let one = int(1);
        let m = |d: BigRational| certify_ge(&(&obj - &d), &one, &ub);
        (None, ub.clone(), certify_ge(&obj, &ratio, &ub), certify_ge(&s, &ratio, &ub), m(rat(1, 10)), m(rat(1, 5)))
    };
    Ok(SuperoptReport {
        satisfiable: sat,
        infeasibility: format_rational(&infeas),
        objective: format_rational(&obj),
        s: format_rational(&s),
        z2_star: star,
        z2_star_sq_upper: format_rational(&ub),
        ratio_on_z2: on_z2,
        ratio_on_s: on_s,
        margin_tenth: tenth,
        margin_fifth: fifth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::{build_cubic_system, build_np_hard_system, build_unbounded_instance, c_polynomial};
    use num_traits::Zero;

    fn sat3() -> CnfFormula {
        CnfFormula::new(3, vec![[1, -2, 3], [-1, 2, 3]]).unwrap()
    }

    #[test]
    fn h_at_ytilde() {
        let v = h_value(&rat(-137, 50), &rat(397, 250));
        assert_eq!(v, rat(-109849977, 15625000));
        assert!(v < int(-7));
    }

    #[test]
    fn y_hat_small_bounds() {
        for b in [int(1), rat(1, 10), rat(1, 256)] {
            let [y1, y2] = find_y_hat(&b).unwrap();
            assert!(in_r0(&y1, &y2));
            assert!(h_value(&y1, &y2) <= b);
            assert!(y1.denom().bits() <= 65);
        }
        assert!(find_y_hat(&int(0)).is_err());
    }

    #[test]
    fn witnesses_verify() {
        let f = sat3();
        let a = brute_force_sat(&f).unwrap().unwrap();
        let sys = build_np_hard_system(&f, false).unwrap();
        let w = witness_satisfiable(&f, &a).unwrap();
        assert!(sys.verify(&w).unwrap().feasible);
        assert_eq!(extract_assignment(3, &w).unwrap(), a);
        let q = build_np_hard_system(&f, true).unwrap();
        let wq = extend_quadratized(3, &w).unwrap();
        assert!(q.verify(&wq).unwrap().feasible);
        assert_eq!(project_quadratized(3, &wq).unwrap(), w);
        let wa = witness_always(&f).unwrap();
        assert!(sys.verify(&wa).unwrap().feasible);
        let c = build_cubic_system(&f).unwrap();
        assert!(c.verify(&witness_cubic_satisfiable(&f, &a).unwrap()).unwrap().feasible);
        let bad = Assignment(vec![true, false, false]);
        assert!(witness_satisfiable(&f, &bad).is_err());
    }

    #[test]
    fn epsilon_point() {
        let f = sat3();
        let prob = build_superopt_problem(&f).unwrap();
        let w = witness_epsilon(&f, &rat(1, 2)).unwrap();
        let v = prob.system.verify(&w).unwrap();
        assert!(v.worst_violation <= rat(1, 2));
        let viol = v.violated_indices(&prob.system);
        assert!(viol.iter().all(|&i| prob.system.constraints()[i].label.as_deref() == Some("nasty")));
        assert_eq!(prob.objective.eval(&w).unwrap(), int(2));
    }

    #[test]
    fn rays_in_cone() {
        let f = sat3();
        let p = build_unbounded_instance(&f).unwrap();
        let a = brute_force_sat(&f).unwrap().unwrap();
        let v = unbounded_ray_satisfiable(&f, &a).unwrap();
        assert!(p.system.verify(&v).unwrap().feasible);
        // pi is homogeneous cubic, so pi(lambda v) = lambda^3 pi(v) and pi(v) = c(y~, 1) > 0
        let pv = p.objective.eval(&v).unwrap();
        assert!(pv.is_positive());
        let u = unbounded_ray_always(&f).unwrap();
        assert!(p.system.verify_alg(&u).unwrap().feasible);
        let lay = UnboundedLayout { n: 3 };
        let c = c_polynomial(lay.num_vars(), lay.y(0), lay.y(1), lay.y(2));
        assert!(c.eval_alg(&u).unwrap().is_zero());
    }

    #[test]
    fn superopt_report() {
        let f = sat3();
        let w = witness_epsilon(&f, &rat(1, 4)).unwrap();
        let r = check_superoptimality(&f, &w).unwrap();
        assert!(r.satisfiable);
        assert_eq!(r.ratio_on_z2, Some(false));
        assert_eq!(r.margin_tenth, Some(false));
    }
}
