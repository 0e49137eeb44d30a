//! Growth of polynomials along rays `x0 + lambda v`, cubic growth directions,
//! and rational perturbation of cubically unbounded rays.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::config::precision_cap;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{independent_rows, project_affine, Polyhedron};
use crate::ratcore::{int, rat};
use crate::reductions::c_polynomial;
use crate::{AlgebraicElement, PolySystem, Polynomial, UniPolyAlg};

pub const RAY_PRECISION_CAP: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    ToPlusInfinity,
    ToMinusInfinity,
    BoundedConstant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RayClass {
    /// Degree of the restriction `lambda -> f(x0 + lambda v)` after dropping zero terms.
    pub growth_order: usize,
    pub direction: Direction,
    /// Leading coefficient of the restriction (zero for the zero polynomial).
    pub leading: AlgebraicElement,
    pub restriction: UniPolyAlg,
}

fn embed(x: &[BigRational]) -> Vec<AlgebraicElement> {
    x.iter().cloned().map(AlgebraicElement::rational).collect()
}

pub fn classify_ray(f: &Polynomial, x0: &[BigRational], v: &[BigRational]) -> Result<RayClass> {
    classify_ray_alg(f, &embed(x0), &embed(v))
}

/// As [`classify_ray`] with coordinates in a shared extension `Q[t]/(t^e - k)`.
pub fn classify_ray_alg(f: &Polynomial, x0: &[AlgebraicElement], v: &[AlgebraicElement]) -> Result<RayClass> {
    check_dim(f.num_vars(), x0.len())?;
    check_dim(f.num_vars(), v.len())?;
    if v.iter().all(|c| c.is_zero()) {
        return Err(Error::Precondition("ray direction must be nonzero".into()));
    }
    // coefficients are stored exactly and trimmed, so the degree is the growth order
    let restriction = f.restrict_to_ray_alg(x0, v)?;
    let (growth_order, leading) = match restriction.degree() {
        Some(k) => (k, restriction.leading().cloned().expect("nonzero")),
        None => (0, AlgebraicElement::rational(BigRational::zero())),
    };
    let direction = match (growth_order, leading.sign()) {
        (0, _) | (_, Ordering::Equal) => Direction::BoundedConstant,
        (_, Ordering::Greater) => Direction::ToPlusInfinity,
        (_, Ordering::Less) => Direction::ToMinusInfinity,
    };
    Ok(RayClass { growth_order, direction, leading, restriction })
}

const GRID_ORDER: [i64; 9] = [0, 1, -1, 2, -2, 3, -3, 4, -4];

/// A rational `v` with `f_3(v) > 0`, `f_3` the cubic part of `f`.
///
/// Scans `{-4..4}^n` in lexicographic order over the per-axis sequence
/// `0, 1, -1, 2, -2, ...`; a nonzero cubic cannot vanish on that grid.
pub fn cubic_growth_direction(f: &Polynomial) -> Result<Vec<BigRational>> {
    let f3 = f.homogeneous_component(3);
    if f3.is_zero() {
        return Err(Error::Precondition("polynomial has no cubic part".into()));
    }
    let n = f.num_vars();
    let mut idx = vec![0usize; n];
    loop {
        // advance first: the all-zero start is never a valid direction
        let mut i = n;
        loop {
            if i == 0 {
                return Err(Error::Internal("cubic part vanished on the whole grid".into()));
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < GRID_ORDER.len() {
                break;
            }
            idx[i] = 0;
        }
        let v: Vec<BigRational> = idx.iter().map(|&k| int(GRID_ORDER[k])).collect();
        let val = f3.eval(&v)?;
        if !val.is_zero() {
            let v = if val.is_negative() { v.into_iter().map(|c| -c).collect() } else { v };
            debug_assert!(f3.eval(&v)?.is_positive());
            return Ok(v);
        }
    }
}

fn alg_affine(row: &[BigRational], x: &[AlgebraicElement], rhs: &BigRational) -> AlgebraicElement {
    let mut acc = AlgebraicElement::rational(-rhs.clone());
    for (r, xi) in row.iter().zip(x) {
        acc = acc.checked_add(&xi.scale(r)).expect("shared extension");
    }
    acc
}

/// Rows of `p` with `row . x - rhs = 0` exactly (`homogeneous` uses `rhs = 0`).
fn tight_rows(p: &Polyhedron, x: &[AlgebraicElement], homogeneous: bool) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let zero = BigRational::zero();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (row, rhs) in p.a.iter().zip(&p.b) {
        let rhs = if homogeneous { &zero } else { rhs };
        if alg_affine(row, x, rhs).is_zero() {
            a.push(row.clone());
            b.push(rhs.clone());
        }
    }
    let keep = independent_rows(&a);
    (keep.iter().map(|&i| a[i].clone()).collect(), keep.iter().map(|&i| b[i].clone()).collect())
}

fn within(xbar: &[AlgebraicElement], x: &[BigRational], eps: &BigRational) -> bool {
    xbar.iter().zip(x).all(|(a, q)| {
        let d = a.checked_sub(&AlgebraicElement::rational(q.clone())).expect("shared extension");
        d.cmp_rational(eps) == Ordering::Less && d.cmp_rational(&-eps.clone()) == Ordering::Greater
    })
}

/// Rational `(x~, v~)` within `eps` of `(x_bar, v_bar)` with `f_3(v~) > 0`, and,
/// when a polyhedron is given, `x~` in it and `v~` in its recession cone.
///
/// Coordinates are rounded to `k` fractional bits with `k` doubling. When the
/// rounding leaves the polyhedron, it is projected onto the constraints tight
/// at the exact point, which the exact point itself satisfies.
pub fn rationalize_unbounded_ray(
    f: &Polynomial,
    x_bar: &[AlgebraicElement],
    v_bar: &[AlgebraicElement],
    polytope: Option<&PolySystem>,
    eps: &BigRational,
) -> Result<(Vec<BigRational>, Vec<BigRational>)> {
    if !eps.is_positive() {
        return Err(Error::Precondition("eps must be positive".into()));
    }
    let class = classify_ray_alg(f, x_bar, v_bar)?;
    if class.growth_order != 3 || class.direction != Direction::ToPlusInfinity {
        return Err(Error::Precondition(format!(
            "ray is not cubically unbounded (growth order {}, {:?})",
            class.growth_order, class.direction
        )));
    }
    let f3 = f.homogeneous_component(3);
    let poly = match polytope {
        Some(s) => {
            check_dim(f.num_vars(), s.num_vars())?;
            if !s.is_linear() {
                return Err(Error::Precondition("polyhedron must be given by linear constraints".into()));
            }
            Some(s.linear_polyhedron())
        }
        None => None,
    };
    if let Some(p) = &poly {
        let ok_x = p.a.iter().zip(&p.b).all(|(r, b)| alg_affine(r, x_bar, b).sign() != Ordering::Greater);
        let ok_v = p.a.iter().all(|r| alg_affine(r, v_bar, &BigRational::zero()).sign() != Ordering::Greater);
        if !ok_x || !ok_v {
            return Err(Error::Precondition("x_bar must lie in P and v_bar in its recession cone".into()));
        }
    }
    let tight = poly.as_ref().map(|p| (tight_rows(p, x_bar, false), tight_rows(p, v_bar, true)));

    let cap = precision_cap(RAY_PRECISION_CAP);
    let mut k = 8u64.min(cap);
    loop {
        let mut x: Vec<BigRational> = x_bar.iter().map(|c| c.to_dyadic(k)).collect();
        let mut v: Vec<BigRational> = v_bar.iter().map(|c| c.to_dyadic(k)).collect();
        let mut ok = true;
        if let (Some(p), Some(((ax, bx), (av, bv)))) = (&poly, &tight) {
            if !p.contains(&x) {
                x = project_affine(ax, bx, &x);
            }
            if !p.in_recession_cone(&v) {
                v = project_affine(av, bv, &v);
            }
            ok = p.contains(&x) && p.in_recession_cone(&v);
        }
        ok = ok && within(x_bar, &x, eps) && within(v_bar, &v, eps) && f3.eval(&v)?.is_positive();
        if ok {
            return Ok((x, v));
        }
        if k >= cap {
            return Err(Error::PrecisionCap { cap, context: "rationalizing an unbounded ray".into() });
        }
        k = (k * 2).min(cap);
    }
}

/// `f(y1, y2) = y2 - (y2 - y1^2)^2`: unbounded above, yet bounded on every ray.
pub fn quartic_counterexample() -> Polynomial {
    let y1 = Polynomial::var(2, 0);
    let y2 = Polynomial::var(2, 1);
    y2.clone() - (y2 - y1.pow(2)).pow(2)
}

/// The cubic `f = c + q` on `R^3` with `c = -2y1^3 - y2^3 + 6y1y2y3 - 4y3^3`,
/// `q = y1 y3`, and the cone over `[1.25, 1.26] x [1.58, 1.59] x {1}`.
/// `f` is unbounded along `(2^{1/3}, 2^{2/3}, 1)` but not along any rational ray.
#[derive(Debug, Clone)]
pub struct IrrationalRayExample {
    pub c: Polynomial,
    pub q: Polynomial,
    pub f: Polynomial,
    pub cone: PolySystem,
}

pub fn irrational_ray_example() -> IrrationalRayExample {
    let c = c_polynomial(3, 0, 1, 2);
    let v = |i| Polynomial::var(3, i);
    let q = v(0) * v(2);
    let f = c.clone() + q.clone();
    let mut cone = PolySystem::new(vec!["y1".into(), "y2".into(), "y3".into()]);
    cone.add_le(v(2).scale(&rat(125, 100)) - v(0), "Q");
    cone.add_le(v(0) - v(2).scale(&rat(126, 100)), "Q");
    cone.add_le(v(2).scale(&rat(158, 100)) - v(1), "Q");
    cone.add_le(v(1) - v(2).scale(&rat(159, 100)), "Q");
    cone.add_le(-v(2), "y3>=0");
    IrrationalRayExample { c, q, f, cone }
}

/// `d~ = (2^{1/3}, 2^{2/3}, 1)`.
pub fn d_tilde() -> Vec<AlgebraicElement> {
    let [t, t2] = crate::gadgets::y_star();
    vec![t, t2, AlgebraicElement::rational(int(1))]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Extension;

    #[test]
    fn irrational_ray() {
        let ex = irrational_ray_example();
        let zero = vec![AlgebraicElement::rational(int(0)); 3];
        let r = classify_ray_alg(&ex.f, &zero, &d_tilde()).unwrap();
        assert_eq!(r.growth_order, 2);
        assert_eq!(r.direction, Direction::ToPlusInfinity);
        assert_eq!(r.leading, d_tilde()[0]);
        let r = classify_ray_alg(&ex.c, &zero, &d_tilde()).unwrap();
        assert_eq!(r.growth_order, 0);
        let r = classify_ray(&ex.f, &[int(0), int(0), int(0)], &[rat(5, 4), rat(8, 5), int(1)]).unwrap();
        assert_eq!((r.growth_order, r.direction), (3, Direction::ToMinusInfinity));
        assert!(rationalize_unbounded_ray(&ex.f, &zero, &d_tilde(), Some(&ex.cone), &rat(1, 10)).is_err());
    }

    #[test]
    fn constant_and_growth_direction() {
        let one = Polynomial::constant(2, int(3));
        let r = classify_ray(&one, &[int(0), int(0)], &[int(1), int(0)]).unwrap();
        assert_eq!((r.growth_order, r.direction), (0, Direction::BoundedConstant));
        assert!(classify_ray(&one, &[int(0), int(0)], &[int(0), int(0)]).is_err());
        let x1 = Polynomial::var(3, 0);
        assert_eq!(cubic_growth_direction(&x1.pow(3)).unwrap(), vec![int(1), int(0), int(0)]);
        let f = Polynomial::var(3, 0).pow(2) * Polynomial::var(3, 1);
        assert_eq!(cubic_growth_direction(&f).unwrap(), vec![int(1), int(1), int(0)]);
        let c = c_polynomial(3, 0, 1, 2);
        let v = cubic_growth_direction(&c).unwrap();
        assert!(c.eval(&v).unwrap().is_positive());
    }

    #[test]
    fn rationalize_sqrt2() {
        let ext = Extension::sqrt(2).unwrap();
        let f = Polynomial::var(2, 0).pow(3);
        let zero = AlgebraicElement::rational(int(0));
        let v = vec![AlgebraicElement::generator(&ext), zero.clone()];
        let (x, w) = rationalize_unbounded_ray(&f, &[zero.clone(), zero], &v, None, &rat(1, 10)).unwrap();
        assert_eq!(x, vec![int(0), int(0)]);
        assert!(w[0].is_positive() && w[1].is_zero());
        let rational = rationalize_unbounded_ray(&f, &embed(&[int(1), int(2)]), &embed(&[int(1), int(0)]), None, &rat(1, 10));
        assert_eq!(rational.unwrap(), (vec![int(1), int(2)], vec![int(1), int(0)]));
    }

    #[test]
    fn quartic() {
        let f = quartic_counterexample();
        assert_eq!(f.eval(&[int(10), int(100)]).unwrap(), int(100));
        let r = classify_ray(&f, &[int(3), int(-1)], &[int(0), int(1)]).unwrap();
        assert_eq!((r.growth_order, r.direction), (2, Direction::ToMinusInfinity));
        assert_eq!(r.leading, AlgebraicElement::rational(int(-1)));
    }
}
