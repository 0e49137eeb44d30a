//! Polynomial inequality systems: the data model, exact verification at
//! rational and algebraic points, relaxation and the JSON file format.

mod format;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::Polyhedron;
use crate::ratcore::AlgebraicElement;
use crate::Polynomial;

pub use format::{Point, PointJson, SystemJson};

/// How a constraint polynomial relates to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    /// `p <= 0`
    #[serde(rename = "LE0")]
    Le0,
    /// `p = 0`
    #[serde(rename = "EQ0")]
    Eq0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Linear,
    Nonlinear,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub poly: Polynomial,
    pub rel: Relation,
    pub tag: Tag,
    pub label: Option<String>,
}

impl Constraint {
    pub fn new(poly: Polynomial, rel: Relation) -> Self {
        let tag = if poly.degree() <= 1 { Tag::Linear } else { Tag::Nonlinear };
        Constraint { poly, rel, tag, label: None }
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Violation of the constraint given its residual: `max(r, 0)` or `|r|`.
    pub fn violation(&self, r: &BigRational) -> BigRational {
        match self.rel {
            Relation::Le0 => r.clone().max(BigRational::zero()),
            Relation::Eq0 => r.abs(),
        }
    }
}

/// Summary counts `(m, l, d, H)`: linear and nonlinear constraint counts, maximum
/// degree and maximum height after clearing each constraint's denominators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemMeta {
    pub m: usize,
    pub ell: usize,
    pub d: u32,
    #[serde(rename = "H", serialize_with = "ser_big")]
    pub h: BigInt,
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// A list of polynomial constraints over named variables.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySystem {
    var_names: Vec<String>,
    constraints: Vec<Constraint>,
}

/// Outcome of plugging a point into a system.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict<S> {
    pub feasible: bool,
    /// Value of each constraint polynomial at the point, in constraint order.
    pub residuals: Vec<S>,
    /// Largest violation: `max(p, 0)` for inequalities and `|p|` for equations.
    pub worst_violation: S,
}

impl<S> Verdict<S> {
    pub fn violated_indices(&self, sys: &PolySystem) -> Vec<usize>
    where
        S: ViolationSign,
    {
        sys.constraints
            .iter()
            .zip(&self.residuals)
            .enumerate()
            .filter(|(_, (c, r))| r.violates(c.rel))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Sign classification of a residual.
pub trait ViolationSign {
    fn violates(&self, rel: Relation) -> bool;
}

impl ViolationSign for BigRational {
    fn violates(&self, rel: Relation) -> bool {
        match rel {
            Relation::Le0 => self.is_positive(),
            Relation::Eq0 => !self.is_zero(),
        }
    }
}

impl ViolationSign for AlgebraicElement {
    fn violates(&self, rel: Relation) -> bool {
        match rel {
            Relation::Le0 => self.sign() == Ordering::Greater,
            Relation::Eq0 => !self.is_zero(),
        }
    }
}

impl PolySystem {
    pub fn new(var_names: Vec<String>) -> Self {
        PolySystem { var_names, constraints: Vec::new() }
    }

    /// System over `x1..xn`.
    pub fn with_default_names(n: usize) -> Self {
        Self::new(crate::polyalg::default_var_names(n))
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn push(&mut self, c: Constraint) -> Result<()> {
        check_dim(self.num_vars(), c.poly.num_vars())?;
        self.constraints.push(c);
        Ok(())
    }

    /// Adds `p <= 0`.
    pub fn add_le(&mut self, p: Polynomial, label: &str) {
        self.push(Constraint::new(p, Relation::Le0).labeled(label)).expect("variable count");
    }

    /// Adds `p >= 0`, stored as `-p <= 0`.
    pub fn add_ge(&mut self, p: Polynomial, label: &str) {
        self.add_le(-p, label);
    }

    /// Adds `p = 0`.
    pub fn add_eq(&mut self, p: Polynomial, label: &str) {
        self.push(Constraint::new(p, Relation::Eq0).labeled(label)).expect("variable count");
    }

    /// Adds `lhs <= rhs`.
    pub fn add_le_pair(&mut self, lhs: Polynomial, rhs: Polynomial, label: &str) {
        self.add_le(lhs - rhs, label);
    }

    pub fn extend(&mut self, other: &PolySystem) -> Result<()> {
        check_dim(self.num_vars(), other.num_vars())?;
        self.constraints.extend(other.constraints.iter().cloned());
        Ok(())
    }

    /// Indices of constraints with the given label prefix.
    pub fn find(&self, prefix: &str) -> Vec<usize> {
        self.constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.label.as_deref().is_some_and(|l| l.starts_with(prefix)))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn meta(&self) -> SystemMeta {
        let mut h = BigInt::zero();
        let mut d = 0;
        let (mut m, mut ell) = (0, 0);
        for c in &self.constraints {
            let (hc, dc, _) = c.poly.height_and_degree();
            h = h.max(hc);
            d = d.max(dc);
            match c.tag {
                Tag::Linear => m += 1,
                Tag::Nonlinear => ell += 1,
            }
        }
        SystemMeta { m, ell, d, h }
    }

    pub fn verify(&self, x: &[BigRational]) -> Result<Verdict<BigRational>> {
        check_dim(self.num_vars(), x.len())?;
        let mut residuals = Vec::with_capacity(self.constraints.len());
        let mut worst = BigRational::zero();
        for c in &self.constraints {
            let r = c.poly.eval(x)?;
            let v = c.violation(&r);
            if v > worst {
                worst = v;
            }
            residuals.push(r);
        }
        Ok(Verdict { feasible: worst.is_zero(), residuals, worst_violation: worst })
    }

    /// Exact verification at a point whose coordinates share one algebraic extension.
    pub fn verify_alg(&self, x: &[AlgebraicElement]) -> Result<Verdict<AlgebraicElement>> {
        check_dim(self.num_vars(), x.len())?;
        let mut residuals = Vec::with_capacity(self.constraints.len());
        let mut worst = AlgebraicElement::zero();
        for c in &self.constraints {
            let r = c.poly.eval_alg(x)?;
            let v = match c.rel {
                Relation::Le0 if r.sign() == Ordering::Greater => r.clone(),
                Relation::Le0 => AlgebraicElement::zero(),
                Relation::Eq0 if r.sign() == Ordering::Less => -r.clone(),
                Relation::Eq0 => r.clone(),
            };
            if v.checked_sub(&worst)?.sign() == Ordering::Greater {
                worst = v;
            }
            residuals.push(r);
        }
        Ok(Verdict { feasible: worst.is_zero(), residuals, worst_violation: worst })
    }

    /// Worst violation at `x`; zero exactly for feasible points.
    pub fn infeasibility(&self, x: &[BigRational]) -> Result<BigRational> {
        Ok(self.verify(x)?.worst_violation)
    }

    pub fn num_nonlinear(&self) -> usize {
        self.constraints.iter().filter(|c| c.tag == Tag::Nonlinear).count()
    }

    /// Keeps linear constraints and replaces each nonlinear `g <= 0` by
    /// `l * delta * g - 1 <= 0`, where `l` is the number of nonlinear constraints.
    /// A nonlinear equation `g = 0` becomes the two inequalities
    /// `l delta g - 1 <= 0` and `-l delta g - 1 <= 0`.
    pub fn relax(&self, delta: &BigInt) -> PolySystem {
        assert!(delta >= &BigInt::one(), "relaxation needs delta >= 1");
        let ell = self.num_nonlinear().max(1);
        let k = BigRational::from_integer(delta * BigInt::from(ell));
        let n = self.num_vars();
        let one = Polynomial::constant(n, BigRational::one());
        let mut out = PolySystem::new(self.var_names.clone());
        for c in &self.constraints {
            if c.tag == Tag::Linear {
                out.constraints.push(c.clone());
                continue;
            }
            let scaled = c.poly.scale(&k);
            let mut push = |p: Polynomial, suffix: &str| {
                out.constraints.push(Constraint {
                    poly: p,
                    rel: Relation::Le0,
                    tag: Tag::Nonlinear,
                    label: c.label.as_ref().map(|l| format!("{l}{suffix}")),
                });
            };
            match c.rel {
                Relation::Le0 => push(scaled - one.clone(), ""),
                Relation::Eq0 => {
                    push(scaled.clone() - one.clone(), "+");
                    push(-scaled - one.clone(), "-");
                }
            }
        }
        out
    }

    /// The linear constraints as `{x : A x <= b}`; equations become two rows.
    pub fn linear_polyhedron(&self) -> Polyhedron {
        let n = self.num_vars();
        let mut p = Polyhedron::new(n);
        for c in self.constraints.iter().filter(|c| c.tag == Tag::Linear) {
            let (row, rhs) = linear_row(&c.poly);
            if c.rel == Relation::Eq0 {
                p.push(row.iter().map(|v| -v.clone()).collect(), -rhs.clone());
            }
            p.push(row, rhs);
        }
        p
    }

    pub fn nonlinear(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter().filter(|c| c.tag == Tag::Nonlinear)
    }

    pub fn is_linear(&self) -> bool {
        self.constraints.iter().all(|c| c.tag == Tag::Linear)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.constraints {
            let p = crate::polyalg::format_polynomial(&c.poly, &self.var_names);
            let rel = match c.rel {
                Relation::Le0 => "<= 0",
                Relation::Eq0 => "= 0",
            };
            match &c.label {
                Some(l) => out.push_str(&format!("[{l}] {p} {rel}\n")),
                None => out.push_str(&format!("{p} {rel}\n")),
            }
        }
        out
    }
}

/// Splits an affine polynomial `a.x + c` into `(a, -c)` so that `p <= 0` reads `a.x <= -c`.
pub fn linear_row(p: &Polynomial) -> (Vec<BigRational>, BigRational) {
    let n = p.num_vars();
    let mut row = vec![BigRational::zero(); n];
    let mut c = BigRational::zero();
    for (m, coef) in p.terms() {
        match m.exponents().iter().position(|&e| e == 1) {
            Some(i) if m.degree() == 1 => row[i] = coef.clone(),
            None if m.degree() == 0 => c = coef.clone(),
            _ => panic!("linear_row called on a nonlinear polynomial"),
        }
    }
    (row, -c)
}

/// Builds the polynomial `a.x - b` from a row.
pub fn row_polynomial(row: &[BigRational], rhs: &BigRational) -> Polynomial {
    let n = row.len();
    let mut p = Polynomial::constant(n, -rhs.clone());
    for (i, a) in row.iter().enumerate() {
        p.add_term(crate::Monomial::var(n, i), a.clone());
    }
    p
}

impl SystemMeta {
    pub fn h_u32(&self) -> Result<u32> {
        u32::try_from(&self.h).map_err(|_| Error::Precondition("height too large".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::{int, rat, Extension};

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn simple_verdicts() {
        let mut s = PolySystem::with_default_names(1);
        s.add_le(x(1, 0), "x<=0");
        let v = s.verify(&[int(1)]).unwrap();
        assert!(!v.feasible);
        assert_eq!(v.worst_violation, int(1));
        assert_eq!(s.infeasibility(&[rat(3, 2)]).unwrap(), rat(3, 2));
        assert_eq!(s.infeasibility(&[int(-1)]).unwrap(), int(0));
        assert!(s.verify(&[int(0), int(1)]).is_err());
    }

    #[test]
    fn relaxation() {
        let mut s = PolySystem::with_default_names(1);
        s.add_le(x(1, 0).pow(2), "g");
        let r = s.relax(&BigInt::from(2));
        assert_eq!(r.constraints()[0].poly, x(1, 0).pow(2).scale(&int(2)) - Polynomial::constant(1, int(1)));
        let mut t = PolySystem::with_default_names(2);
        t.add_eq(x(2, 0) * x(2, 1) - Polynomial::constant(2, int(1)), "eq");
        t.add_le(x(2, 0) - Polynomial::constant(2, int(3)), "lin");
        let r = t.relax(&BigInt::from(5));
        assert_eq!(r.constraints().len(), 3);
        assert!(r.verify(&[int(1), int(1)]).unwrap().feasible);
    }

    #[test]
    fn algebraic_socp_point() {
        let mut s = PolySystem::with_default_names(2);
        s.add_le(x(2, 0).pow(2) - Polynomial::constant(2, int(5)), "ball");
        s.add_ge(x(2, 0) - Polynomial::constant(2, int(2)), "x>=2");
        let ext = Extension::sqrt(5).unwrap();
        let r5 = AlgebraicElement::generator(&ext);
        let v = s.verify_alg(&[r5, AlgebraicElement::zero()]).unwrap();
        assert!(v.feasible);
        assert!(v.residuals[0].is_zero());
        let t3 = AlgebraicElement::generator(&Extension::cbrt(3).unwrap());
        let ext5 = AlgebraicElement::generator(&ext);
        assert!(s.verify_alg(&[ext5, t3]).is_err());
    }

    #[test]
    fn linear_rows() {
        let p = x(2, 0).scale(&int(2)) - x(2, 1) + Polynomial::constant(2, int(3));
        let (row, rhs) = linear_row(&p);
        assert_eq!(row, vec![int(2), int(-1)]);
        assert_eq!(rhs, int(-3));
        assert_eq!(row_polynomial(&row, &rhs), p);
    }
}
