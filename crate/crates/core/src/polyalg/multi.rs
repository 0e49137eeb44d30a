use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::uni::Univariate;
use crate::error::{check_dim, Error, Result};
use crate::ratcore::{AlgebraicElement, RatStr};
use crate::scalar::Scalar;

/// Sparse polynomial `sum c_I x^I` in a fixed number of variables.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps are equal.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly<T> {
    n: usize,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> MultiPoly<T> {
    pub fn zero(n: usize) -> Self {
        MultiPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: T) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::one(n), c);
        p
    }

    /// The coordinate polynomial `x_i` (0-based).
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n, "variable index {i} out of range for {n} variables");
        let mut p = Self::zero(n);
        p.add_term(Monomial::var(n, i), T::one());
        p
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, T)>,
    {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            check_dim(n, e.len())?;
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: T) {
        debug_assert_eq!(m.num_vars(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> T {
        self.coeff(&Monomial::one(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other.clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.n);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.n, T::one());
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> MultiPoly<U> {
        let mut out = MultiPoly::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Substitutes `images[i]` for `x_i` in any ring `U`, embedding coefficients with `embed`.
    ///
    /// Powers of each image are cached, so the cost is one multiplication per
    /// nonzero exponent entry plus the power table.
    pub fn eval_with<U, F>(&self, images: &[U], zero: U, one: U, embed: F) -> Result<U>
    where
        U: Clone + Add<Output = U> + Mul<Output = U>,
        F: Fn(&T) -> U,
    {
        check_dim(self.n, images.len())?;
        let mut max_exp = vec![0u32; self.n];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let powers: Vec<Vec<U>> = images
            .iter()
            .zip(&max_exp)
            .map(|(x, &k)| {
                let mut row = Vec::with_capacity(k as usize + 1);
                row.push(one.clone());
                for j in 1..=k as usize {
                    let next = row[j - 1].clone() * x.clone();
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = embed(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t * powers[i][e as usize].clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &[T]) -> Result<T> {
        self.eval_with(x, T::zero(), T::one(), Clone::clone)
    }

    /// `p(A y + b)` where `A` has one row per current variable and `m` columns.
    pub fn affine_substitute(&self, a: &[Vec<T>], b: &[T]) -> Result<Self> {
        check_dim(self.n, a.len())?;
        check_dim(self.n, b.len())?;
        let m = a.first().map_or(0, Vec::len);
        let mut images = Vec::with_capacity(self.n);
        for (row, bi) in a.iter().zip(b) {
            check_dim(m, row.len())?;
            let mut img = MultiPoly::constant(m, bi.clone());
            for (j, c) in row.iter().enumerate() {
                img.add_term(Monomial::var(m, j), c.clone());
            }
            images.push(img);
        }
        self.eval_with(&images, Self::zero(m), Self::constant(m, T::one()), |c| {
            MultiPoly::constant(m, c.clone())
        })
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, c.clone() * T::from_i64(e as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.n).map(|i| self.partial(i)).collect()
    }

    /// Sum of the terms of total degree exactly `i`.
    pub fn homogeneous_component(&self, i: u32) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if m.degree() == i {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// The univariate polynomial `lambda -> p(x0 + lambda v)`.
    pub fn restrict_to_ray(&self, x0: &[T], v: &[T]) -> Result<Univariate<T>> {
        check_dim(self.n, x0.len())?;
        check_dim(self.n, v.len())?;
        let images: Vec<Univariate<T>> = x0
            .iter()
            .zip(v)
            .map(|(a, b)| Univariate::new(vec![a.clone(), b.clone()]))
            .collect();
        self.eval_with(&images, Univariate::zero(), Univariate::one(), |c| {
            Univariate::constant(c.clone())
        })
    }
}

impl MultiPoly<BigRational> {
    /// Exact value at an algebraic point. Every coordinate must live in the same
    /// extension (or be rational).
    pub fn eval_alg(&self, x: &[AlgebraicElement]) -> Result<AlgebraicElement> {
        shared_extension(x)?;
        self.eval_with(x, AlgebraicElement::zero(), AlgebraicElement::one(), |c| {
            AlgebraicElement::rational(c.clone())
        })
    }

    pub fn restrict_to_ray_alg(
        &self,
        x0: &[AlgebraicElement],
        v: &[AlgebraicElement],
    ) -> Result<Univariate<AlgebraicElement>> {
        shared_extension(&[x0, v].concat())?;
        self.to_alg().restrict_to_ray(x0, v)
    }

    pub fn to_alg(&self) -> MultiPoly<AlgebraicElement> {
        self.map_coeffs(|c| AlgebraicElement::rational(c.clone()))
    }

    pub fn to_f64(&self) -> MultiPoly<f64> {
        self.map_coeffs(f64::from_rational)
    }

    /// `(H, d, D)`: the lcm `D` of the coefficient denominators, the largest
    /// absolute coefficient `H` of `D * p`, and the total degree `d`.
    pub fn height_and_degree(&self) -> (BigInt, u32, BigInt) {
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut h = BigInt::zero();
        for c in self.terms.values() {
            let v = (c.numer() * (&den / c.denom())).abs();
            if v > h {
                h = v;
            }
        }
        (h, self.degree(), den)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson { exps: m.0.clone(), coef: RatStr(c.clone()) })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        Self::from_terms(j.n, j.terms.iter().map(|t| (t.exps.clone(), t.coef.0.clone())))
    }
}

/// Checks that all algebraic coordinates share one extension.
pub(crate) fn shared_extension(x: &[AlgebraicElement]) -> Result<()> {
    let mut seen = None;
    for v in x {
        if let Some(e) = v.extension() {
            match seen {
                None => seen = Some(e),
                Some(s) if s == e => {}
                Some(s) => return Err(Error::ExtensionMismatch(format!("{s} vs {e}"))),
            }
        }
    }
    Ok(())
}

/// JSON form `{n, terms: [{exps, coef}]}`, terms in descending graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coef: RatStr,
}

impl<T: Scalar> Add for MultiPoly<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("variable count mismatch")
    }
}

impl<T: Scalar> Sub for MultiPoly<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("variable count mismatch")
    }
}

impl<T: Scalar> Mul for MultiPoly<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("variable count mismatch")
    }
}

impl<T: Scalar> Neg for MultiPoly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        MultiPoly { n: self.n, terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl fmt::Display for MultiPoly<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = super::text::default_var_names(self.n);
        f.write_str(&super::text::format_polynomial(self, &names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::{int, rat, Extension};
    use crate::Polynomial;

    fn h() -> Polynomial {
        Polynomial::from_terms(
            2,
            vec![(vec![3, 0], int(2)), (vec![0, 3], int(1)), (vec![1, 1], int(-6)), (vec![0, 0], int(4))],
        )
        .unwrap()
    }

    #[test]
    fn evaluates_h() {
        assert_eq!(h().eval(&[int(0), int(0)]).unwrap(), int(4));
        assert_eq!(h().eval(&[int(1), int(1)]).unwrap(), int(1));
        assert_eq!(
            h().eval(&[rat(-137, 50), rat(397, 250)]).unwrap(),
            rat(-109849977, 15625000)
        );
        assert!(h().eval(&[int(0)]).is_err());
    }

    #[test]
    fn evaluates_h_at_cube_root_point() {
        let ext = Extension::cbrt(2).unwrap();
        let t = AlgebraicElement::generator(&ext);
        let v = h().eval_alg(&[t.clone(), t.clone() * t]).unwrap();
        assert!(v.is_zero());
        let q = Polynomial::from_terms(3, vec![(vec![1, 0, 1], int(1))]).unwrap();
        let t = AlgebraicElement::generator(&ext);
        let d = [t.clone(), t.clone() * t.clone(), AlgebraicElement::one()];
        assert_eq!(q.eval_alg(&d).unwrap(), t);
    }

    #[test]
    fn arithmetic() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        assert_eq!(x.clone() * x.clone(), Polynomial::from_terms(2, vec![(vec![2, 0], int(1))]).unwrap());
        assert!((h() + -h()).is_zero());
        let diff = (x.clone() + y.clone()) * (x.clone() - y.clone());
        assert_eq!(diff, x.pow(2) - y.pow(2));
        assert!(Polynomial::var(1, 0).checked_add(&x).is_err());
    }

    #[test]
    fn substitution() {
        let x2 = Polynomial::from_terms(1, vec![(vec![2], int(1))]).unwrap();
        let shifted = x2.affine_substitute(&[vec![int(1)]], &[int(-1)]).unwrap();
        let expect = Polynomial::from_terms(1, vec![(vec![2], int(1)), (vec![1], int(-2)), (vec![0], int(1))]).unwrap();
        assert_eq!(shifted, expect);
        let f = Polynomial::from_terms(1, vec![(vec![3], int(1)), (vec![2], int(3))]).unwrap();
        let g = f.affine_substitute(&[vec![int(1)]], &[int(-1)]).unwrap();
        let expect = Polynomial::from_terms(1, vec![(vec![3], int(1)), (vec![1], int(-3)), (vec![0], int(2))]).unwrap();
        assert_eq!(g, expect);
        let id = h().affine_substitute(&[vec![int(1), int(0)], vec![int(0), int(1)]], &[int(0), int(0)]).unwrap();
        assert_eq!(id, h());
    }

    #[test]
    fn derivatives_and_components() {
        let g = h().gradient();
        let expect = Polynomial::from_terms(2, vec![(vec![2, 0], int(6)), (vec![0, 1], int(-6))]).unwrap();
        assert_eq!(g[0], expect);
        assert!(Polynomial::constant(2, int(5)).gradient().iter().all(MultiPoly::is_zero));
        let h3 = h().homogeneous_component(3);
        assert_eq!(h3.num_terms(), 2);
        assert_eq!(h().homogeneous_component(0), Polynomial::constant(2, int(4)));
        assert!(h().homogeneous_component(1).is_zero());
    }

    #[test]
    fn ray_restriction() {
        let p = Polynomial::from_terms(1, vec![(vec![2], int(1))]).unwrap();
        let u = p.restrict_to_ray(&[int(0)], &[int(1)]).unwrap();
        assert_eq!(u.coeffs(), &[int(0), int(0), int(1)]);
    }

    #[test]
    fn heights() {
        assert_eq!(h().height_and_degree(), (BigInt::from(6), 3, BigInt::one()));
        let half_x = Polynomial::from_terms(1, vec![(vec![1], rat(1, 2))]).unwrap();
        assert_eq!(half_x.height_and_degree(), (BigInt::one(), 1, BigInt::from(2)));
        assert_eq!(Polynomial::zero(2).height_and_degree(), (BigInt::zero(), 0, BigInt::one()));
    }

    #[test]
    fn json_round_trip() {
        let j = h().to_json();
        assert_eq!(j.terms[0].exps, vec![3, 0]);
        let s = serde_json::to_string(&j).unwrap();
        let back: PolyJson = serde_json::from_str(&s).unwrap();
        assert_eq!(Polynomial::from_json(&back).unwrap(), h());
    }
}
