//! Rational points for a separable cubic `g(x) = sum_i a_i x_i^3 + b_i x_i^2 + c_i x_i + d_i`
//! over a bounded polyhedron, for one or two variables.
//!
//! The minimum of `g` over a polytope is attained at a vertex, at a critical
//! point of `g` restricted to an edge, or at an interior critical point. In
//! dimension at most two every such candidate is a root of a quadratic, so it
//! lives in some `Q(sqrt D)` and its sign can be decided exactly. A rational
//! candidate with `g <= 0` is returned directly; an irrational one with `g < 0`
//! sits in an open set where `g < 0` and is rounded to a nearby dyadic point.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bounds::cauchy_bounds;
use crate::config::precision_cap;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot, Polyhedron};
use crate::ratcore::{ceil_to_int, int, rational_sqrt, QuadSurdSum};
use crate::{AlgebraicElement, Extension, PolySystem, Polynomial, UniPoly};

/// Default cap on the fractional bits of refined points.
pub const SEPARABLE_PRECISION_CAP: u64 = 64;

/// Integer quadruples `(a_i, b_i, c_i, d_i)` with `a_i != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeparableJson", into = "SeparableJson")]
pub struct SeparableCubic {
    coeffs: Vec<[BigInt; 4]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SeparableJson {
    coeffs: Vec<[String; 4]>,
}

impl TryFrom<SeparableJson> for SeparableCubic {
    type Error = Error;
    fn try_from(j: SeparableJson) -> Result<Self> {
        let mut v = Vec::new();
        for q in j.coeffs {
            let parse = |s: &String| s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer {s:?}")));
            v.push([parse(&q[0])?, parse(&q[1])?, parse(&q[2])?, parse(&q[3])?]);
        }
        SeparableCubic::new(v)
    }
}

impl From<SeparableCubic> for SeparableJson {
    fn from(s: SeparableCubic) -> Self {
        SeparableJson { coeffs: s.coeffs.iter().map(|q| q.clone().map(|v| v.to_string())).collect() }
    }
}

impl SeparableCubic {
    pub fn new(coeffs: Vec<[BigInt; 4]>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("separable cubic needs at least one variable".into()));
        }
        if coeffs.iter().any(|q| q[0].is_zero()) {
            return Err(Error::Precondition("every cubic coefficient a_i must be nonzero".into()));
        }
        Ok(SeparableCubic { coeffs })
    }

    pub fn from_i64(coeffs: &[[i64; 4]]) -> Result<Self> {
        Self::new(coeffs.iter().map(|q| q.map(BigInt::from)).collect())
    }

    pub fn num_vars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[[BigInt; 4]] {
        &self.coeffs
    }

    fn rat(&self, i: usize, j: usize) -> BigRational {
        BigRational::from_integer(self.coeffs[i][j].clone())
    }

    /// Coordinate `i` as a univariate polynomial.
    pub fn univariate(&self, i: usize) -> UniPoly {
        UniPoly::new((0..4).rev().map(|j| self.rat(i, j)).collect())
    }

    pub fn polynomial(&self) -> Polynomial {
        let n = self.num_vars();
        let mut p = Polynomial::zero(n);
        for i in 0..n {
            for (e, c) in self.univariate(i).coeffs().iter().enumerate() {
                let mut exps = vec![0; n];
                exps[i] = e as u32;
                p.add_term(crate::Monomial(exps), c.clone());
            }
        }
        p
    }

    pub fn eval(&self, x: &[BigRational]) -> Result<BigRational> {
        check_dim(self.num_vars(), x.len())?;
        Ok(x.iter().enumerate().map(|(i, v)| self.univariate(i).eval(v)).fold(BigRational::zero(), |a, b| a + b))
    }
}

/// `f_i(y - b_i/(3a_i)) = a_i y^3 + c~_i y + d~_i` per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedCubic {
    pub a: Vec<BigRational>,
    pub c: Vec<BigRational>,
    pub d: Vec<BigRational>,
    /// `b_i / (3 a_i)`, so that `x_i = y_i - shift_i`.
    pub shift: Vec<BigRational>,
}

pub fn tartaglia_shift(sc: &SeparableCubic) -> ShiftedCubic {
    let mut out = ShiftedCubic { a: vec![], c: vec![], d: vec![], shift: vec![] };
    for i in 0..sc.num_vars() {
        let [a, b, c, d] = [0, 1, 2, 3].map(|j| sc.rat(i, j));
        let a2 = int(27) * &a * &a;
        out.c.push((&a2 * &c - int(9) * &a * &b * &b) / &a2);
        out.d.push((&a2 * &d - int(9) * &a * &b * &c + int(2) * &b * &b * &b) / &a2);
        out.shift.push(&b / (int(3) * &a));
        out.a.push(a);
    }
    out
}

/// `q = -c~/(3a)` and the sign of the local-minimum branch `+-sqrt(q)`, which
/// is the sign of `a`. `None` when `q < 0` (no real critical points).
pub fn critical_radical(a: &BigRational, c_tilde: &BigRational) -> Option<(BigRational, i8)> {
    assert!(!a.is_zero(), "a must be nonzero");
    let q = -c_tilde / (int(3) * a);
    if q.is_negative() {
        return None;
    }
    Some((q, if a.is_positive() { 1 } else { -1 }))
}

#[derive(Debug, Clone, PartialEq)]
pub enum LocalMin {
    /// The local minimizer and its value.
    Rational { x: Vec<BigRational>, gamma: BigRational },
    /// Coordinate `coordinate` sits at `+-sqrt(radicand)`, which is irrational.
    Irrational { coordinate: usize, radicand: BigRational },
    /// Coordinate `coordinate` has no strict local minimum (`q < 0`, or `q = 0`
    /// where the critical point is an inflection).
    NoLocalMinimum { coordinate: usize },
}

pub fn rational_local_min(sc: &SeparableCubic) -> LocalMin {
    let sh = tartaglia_shift(sc);
    let mut x = Vec::new();
    for i in 0..sc.num_vars() {
        let Some((q, sign)) = critical_radical(&sh.a[i], &sh.c[i]) else {
            return LocalMin::NoLocalMinimum { coordinate: i };
        };
        if q.is_zero() {
            return LocalMin::NoLocalMinimum { coordinate: i };
        }
        match rational_sqrt(&q).expect("q >= 0") {
            Some(r) => x.push(if sign > 0 { r } else { -r } - &sh.shift[i]),
            None => return LocalMin::Irrational { coordinate: i, radicand: q },
        }
    }
    let gamma = sc.eval(&x).expect("dimension");
    LocalMin::Rational { x, gamma }
}

fn clear_denominators(p: &UniPoly) -> UniPoly {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.scale(&BigRational::from_integer(l))
}

/// Integer polynomial having the local-minimum value `gamma*` as a root:
/// `(g - D)^2 - r_1` for one variable and
/// `((g - D)^2 + r_1 - r_2)^2 - 4 r_1 (g - D)^2` for two, with
/// `D = sum d~_i` and `r_i = -4 c~_i^3 / (27 a_i)`.
pub fn gamma_star_polynomial(sc: &SeparableCubic) -> Result<UniPoly> {
    let sh = tartaglia_shift(sc);
    let n = sc.num_vars();
    if n > 2 {
        return Err(Error::Precondition("gamma* polynomial is built for n <= 2".into()));
    }
    for i in 0..n {
        if critical_radical(&sh.a[i], &sh.c[i]).is_none() {
            return Err(Error::Precondition(format!("coordinate {i} has no real critical point")));
        }
    }
    let dsum: BigRational = sh.d.iter().cloned().fold(BigRational::zero(), |a, b| a + b);
    let r: Vec<BigRational> = (0..n).map(|i| -int(4) * &sh.c[i] * &sh.c[i] * &sh.c[i] / (int(27) * &sh.a[i])).collect();
    let t = UniPoly::new(vec![-dsum, BigRational::one()]);
    let t2 = t.clone() * t;
    let p = if n == 1 {
        t2 - UniPoly::constant(r[0].clone())
    } else {
        let inner = t2.clone() + UniPoly::constant(&r[0] - &r[1]);
        inner.clone() * inner - t2.scale(&(int(4) * &r[0]))
    };
    Ok(clear_denominators(&p))
}

/// An integer `delta` with `|gamma*| >= 1/delta` whenever `gamma* != 0`, from
/// the Cauchy bound on [`gamma_star_polynomial`] after deflating zero roots.
pub fn gamma_star_root_bound(sc: &SeparableCubic) -> Result<BigInt> {
    let p = gamma_star_polynomial(sc)?;
    let k = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let deflated = UniPoly::new(p.coeffs()[k..].to_vec());
    if deflated.degree() == Some(0) {
        return Err(Error::Precondition("the only root is gamma* = 0".into()));
    }
    let (_, delta) = cauchy_bounds(&deflated)?;
    Ok(ceil_to_int(&delta))
}

#[derive(Debug, Clone, PartialEq)]
pub enum SeparableOutcome {
    /// A rational point of the polytope with `g <= 0`.
    Point(Vec<BigRational>),
    /// `g > 0` on the whole polytope (or the polytope is empty).
    Infeasible,
    /// `min g = 0` over the polytope and it is attained only at irrational points.
    NeedsIrrational { note: String },
}

/// Real roots of a univariate polynomial of degree at most 2, as elements of `Q` or `Q(sqrt D)`.
fn quadratic_roots(p: &UniPoly) -> Result<Vec<AlgebraicElement>> {
    let c = |i| p.coeff(i);
    let roots = match p.degree() {
        None | Some(0) => vec![],
        Some(1) => vec![AlgebraicElement::rational(-c(0) / c(1))],
        Some(2) => {
            let disc = c(1) * c(1) - int(4) * c(2) * c(0);
            if disc.is_negative() {
                vec![]
            } else {
                let two_a = int(2) * c(2);
                match rational_sqrt(&disc)? {
                    Some(s) => {
                        vec![AlgebraicElement::rational((-c(1) - &s) / &two_a), AlgebraicElement::rational((-c(1) + s) / &two_a)]
                    }
                    None => {
                        // sqrt(p/q) = sqrt(p q) / q
                        let ext = Extension::new(2, disc.numer() * disc.denom())?;
                        let base = -c(1) / &two_a;
                        let coef = BigRational::new(BigInt::one(), disc.denom().clone()) / &two_a;
                        vec![
                            AlgebraicElement::new(&ext, vec![base.clone(), -coef.clone()])?,
                            AlgebraicElement::new(&ext, vec![base, coef])?,
                        ]
                    }
                }
            }
        }
        Some(d) => return Err(Error::Internal(format!("expected degree <= 2, got {d}"))),
    };
    Ok(roots)
}

fn alg_eval(p: &UniPoly, x: &AlgebraicElement) -> AlgebraicElement {
    p.map(|c| AlgebraicElement::rational(c.clone())).eval(x)
}

struct IrrationalCandidate {
    value_sign: Ordering,
    kind: Cand,
}

enum Cand {
    Edge { v0: Vec<BigRational>, dir: Vec<BigRational>, phi: UniPoly, lambda: AlgebraicElement },
    Interior { x: Vec<AlgebraicElement> },
}

/// Edges of a bounded polytope in dimension 1 or 2, as vertex pairs.
fn edges(poly: &Polyhedron, verts: &[Vec<BigRational>]) -> Vec<(Vec<BigRational>, Vec<BigRational>)> {
    let mut out = Vec::new();
    if verts.len() < 2 {
        return out;
    }
    if poly.n == 1 {
        out.push((verts[0].clone(), verts[verts.len() - 1].clone()));
        return out;
    }
    for (row, b) in poly.a.iter().zip(&poly.b) {
        if row.iter().all(|v| v.is_zero()) {
            continue;
        }
        let on: Vec<&Vec<BigRational>> = verts.iter().filter(|v| &dot(row, v) == b).collect();
        if on.len() >= 2 {
            let e = (on[0].clone(), on[on.len() - 1].clone());
            if !out.contains(&e) {
                out.push(e);
            }
        }
    }
    out.sort();
    out
}

/// Decides whether `{x in P : g(x) <= 0}` has a rational point, and returns one.
///
/// `linear` must contain only linear constraints describing a bounded polytope
/// in `n in {1, 2}` variables.
pub fn solve_separable(sc: &SeparableCubic, linear: &PolySystem) -> Result<SeparableOutcome> {
    let n = sc.num_vars();
    if n > 2 {
        return Err(Error::Precondition("solve_separable handles n in {1, 2}".into()));
    }
    check_dim(n, linear.num_vars())?;
    if !linear.is_linear() {
        return Err(Error::Precondition("the polytope system must be linear".into()));
    }
    let poly = linear.linear_polyhedron();
    if !poly.is_bounded() {
        return Err(Error::Unbounded("polytope is unbounded; use ray analysis for unbounded regions".into()));
    }
    let verts = poly.vertices();
    if verts.is_empty() {
        return Ok(SeparableOutcome::Infeasible);
    }
    let g = sc.polynomial();

    for v in &verts {
        if !g.eval(v)?.is_positive() {
            return Ok(SeparableOutcome::Point(v.clone()));
        }
    }

    let mut irrational = Vec::new();
    for (v0, v1) in edges(&poly, &verts) {
        let dir: Vec<BigRational> = v1.iter().zip(&v0).map(|(a, b)| a - b).collect();
        let phi = g.restrict_to_ray(&v0, &dir)?;
        let roots = quadratic_roots(&phi.derivative())?;
        let open01 = |r: &AlgebraicElement| {
            r.cmp_rational(&BigRational::zero()) == Ordering::Greater && r.cmp_rational(&BigRational::one()) == Ordering::Less
        };
        for lambda in roots.into_iter().filter(open01) {
            match lambda.to_rational() {
                Some(l) => {
                    if !phi.eval(&l).is_positive() {
                        return Ok(SeparableOutcome::Point(v0.iter().zip(&dir).map(|(a, d)| a + &l * d).collect()));
                    }
                }
                None => {
                    let value_sign = alg_eval(&phi, &lambda).sign();
                    irrational.push(IrrationalCandidate {
                        value_sign,
                        kind: Cand::Edge { v0: v0.clone(), dir: dir.clone(), phi: phi.clone(), lambda },
                    });
                }
            }
        }
    }

    if n == 2 {
        let crit: Vec<Vec<AlgebraicElement>> =
            (0..2).map(|i| quadratic_roots(&sc.univariate(i).derivative())).collect::<Result<_>>()?;
        for x1 in &crit[0] {
            for x2 in &crit[1] {
                let x = vec![x1.clone(), x2.clone()];
                let surd = |a: &AlgebraicElement| QuadSurdSum::from_quadratic(a).expect("quadratic");
                let interior = poly.a.iter().zip(&poly.b).all(|(row, b)| {
                    let s = surd(&x[0]).scale(&row[0]).add(&surd(&x[1]).scale(&row[1])).sub(&QuadSurdSum::from_rational(b.clone()));
                    s.sign() == Ordering::Less
                });
                if !interior {
                    continue;
                }
                if let (Some(a), Some(b)) = (x[0].to_rational(), x[1].to_rational()) {
                    let p = vec![a, b];
                    if !g.eval(&p)?.is_positive() {
                        return Ok(SeparableOutcome::Point(p));
                    }
                    continue;
                }
                let val = surd(&alg_eval(&sc.univariate(0), &x[0])).add(&surd(&alg_eval(&sc.univariate(1), &x[1])));
                irrational.push(IrrationalCandidate { value_sign: val.sign(), kind: Cand::Interior { x } });
            }
        }
    }

    let cap = precision_cap(SEPARABLE_PRECISION_CAP);
    // one candidate with g < 0 settles it: refining it either lands a point or hits the cap
    if let Some(cand) = irrational.iter().find(|c| c.value_sign == Ordering::Less) {
        let mut k = 8u64.min(cap);
        loop {
            let found = match &cand.kind {
                Cand::Edge { v0, dir, phi, lambda } => {
                    let l = lambda.to_dyadic(k);
                    let inside = l.is_positive() && l < BigRational::one();
                    (inside && !phi.eval(&l).is_positive())
                        .then(|| v0.iter().zip(dir).map(|(a, d)| a + &l * d).collect::<Vec<_>>())
                }
                Cand::Interior { x } => {
                    let p: Vec<BigRational> = x.iter().map(|c| c.to_dyadic(k)).collect();
                    (poly.contains(&p) && !g.eval(&p)?.is_positive()).then_some(p)
                }
            };
            if let Some(p) = found {
                debug_assert!(poly.contains(&p));
                return Ok(SeparableOutcome::Point(p));
            }
            if k >= cap {
                return Err(Error::PrecisionCap { cap, context: "refining a point with g < 0".into() });
            }
            k = (k * 2).min(cap);
        }
    }

    if irrational.iter().any(|c| c.value_sign == Ordering::Equal) {
        return Ok(SeparableOutcome::NeedsIrrational {
            note: "minimum of g over the polytope is 0 and is attained only at irrational points".into(),
        });
    }
    Ok(SeparableOutcome::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rat;

    fn interval(lo: i64, hi: i64) -> PolySystem {
        let mut s = PolySystem::with_default_names(1);
        let x = Polynomial::var(1, 0);
        s.add_le(Polynomial::constant(1, int(lo)) - x.clone(), "lo");
        s.add_le(x - Polynomial::constant(1, int(hi)), "hi");
        s
    }

    #[test]
    fn shift_examples() {
        let s = tartaglia_shift(&SeparableCubic::from_i64(&[[1, 3, 0, 0]]).unwrap());
        assert_eq!((s.c[0].clone(), s.d[0].clone()), (int(-3), int(2)));
        let s = tartaglia_shift(&SeparableCubic::from_i64(&[[2, 0, -6, 4]]).unwrap());
        assert_eq!((s.c[0].clone(), s.d[0].clone()), (int(-6), int(4)));
    }

    #[test]
    fn radicals() {
        assert_eq!(critical_radical(&int(1), &int(-3)), Some((int(1), 1)));
        assert_eq!(critical_radical(&int(1), &int(3)), None);
        assert_eq!(critical_radical(&int(-1), &int(-3)), None);
    }

    #[test]
    fn local_min() {
        let f = SeparableCubic::from_i64(&[[1, 0, -3, 0]]).unwrap();
        assert_eq!(rational_local_min(&f), LocalMin::Rational { x: vec![int(1)], gamma: int(-2) });
        let f = SeparableCubic::from_i64(&[[1, 0, -6, 0]]).unwrap();
        assert!(matches!(rational_local_min(&f), LocalMin::Irrational { coordinate: 0, .. }));
        let f = SeparableCubic::from_i64(&[[1, 0, -3, 0], [1, 0, -12, 0]]).unwrap();
        assert_eq!(rational_local_min(&f), LocalMin::Rational { x: vec![int(1), int(2)], gamma: int(-18) });
    }

    #[test]
    fn gamma_poly() {
        let f = SeparableCubic::from_i64(&[[1, 0, -3, 0]]).unwrap();
        let p = gamma_star_polynomial(&f).unwrap();
        assert_eq!(p, UniPoly::from_ints(&[-4, 0, 1]));
        let d = gamma_star_root_bound(&f).unwrap();
        assert!(BigRational::from_integer(d).recip() <= int(2));
        let f = SeparableCubic::from_i64(&[[1, 0, -3, 0], [1, 0, -12, 0]]).unwrap();
        let p = gamma_star_polynomial(&f).unwrap();
        assert!(p.eval(&int(-18)).is_zero());
    }

    #[test]
    fn solver_examples() {
        let f = SeparableCubic::from_i64(&[[1, 0, -3, 2]]).unwrap();
        assert_eq!(solve_separable(&f, &interval(0, 3)).unwrap(), SeparableOutcome::Point(vec![int(1)]));
        let f = SeparableCubic::from_i64(&[[1, 0, 0, -2]]).unwrap();
        match solve_separable(&f, &interval(0, 3)).unwrap() {
            SeparableOutcome::Point(p) => assert!(!f.eval(&p).unwrap().is_positive()),
            o => panic!("{o:?}"),
        }
        let f = SeparableCubic::from_i64(&[[1, 0, 0, 1]]).unwrap();
        assert_eq!(solve_separable(&f, &interval(0, 3)).unwrap(), SeparableOutcome::Infeasible);
    }

    #[test]
    fn irrational_interior_minimum() {
        // each term is 565 - 400 sqrt2 < 0 at sqrt2 and positive on the boundary of [13/10, 3/2]
        let f = SeparableCubic::from_i64(&[[100, 0, -600, 565], [100, 0, -600, 565]]).unwrap();
        let one = SeparableCubic::from_i64(&[[100, 0, -600, 565]]).unwrap();
        let mut iv = PolySystem::with_default_names(1);
        let x = Polynomial::var(1, 0);
        iv.add_le(Polynomial::constant(1, rat(13, 10)) - x.clone(), "lo");
        iv.add_le(x - Polynomial::constant(1, rat(3, 2)), "hi");
        match solve_separable(&one, &iv).unwrap() {
            SeparableOutcome::Point(p) => assert!(p[0] > rat(13, 10) && !one.eval(&p).unwrap().is_positive()),
            o => panic!("{o:?}"),
        }
        let mut s = PolySystem::with_default_names(2);
        for i in 0..2 {
            let x = Polynomial::var(2, i);
            s.add_le(Polynomial::constant(2, rat(13, 10)) - x.clone(), "lo");
            s.add_le(x - Polynomial::constant(2, rat(3, 2)), "hi");
        }
        match solve_separable(&f, &s).unwrap() {
            SeparableOutcome::Point(p) => {
                assert!(!f.eval(&p).unwrap().is_positive());
                assert!(p.iter().all(|v| v > &rat(13, 10) && v < &rat(3, 2)));
                assert!(s.verify(&p).unwrap().feasible);
            }
            o => panic!("{o:?}"),
        }
    }
}
