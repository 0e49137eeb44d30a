use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::algebraic::AlgebraicElement;

/// A real number `r + sum_i c_i * sqrt(k_i)` with rational `r`, `c_i` and positive
/// integer radicands.
///
/// Needed when two coordinates live in different quadratic fields, e.g. the
/// critical point of a separable cubic in two variables. Radicands are kept
/// pairwise independent (no `k_i * k_j` is a square), so the sum is zero exactly
/// when every coefficient is.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadSurdSum {
    rational: BigRational,
    terms: Vec<(BigRational, BigInt)>,
}

impl QuadSurdSum {
    pub fn from_rational(q: BigRational) -> Self {
        QuadSurdSum { rational: q, terms: Vec::new() }
    }

    /// `c * sqrt(k)`.
    pub fn surd(c: BigRational, k: BigInt) -> Self {
        let mut s = Self::from_rational(BigRational::zero());
        s.push(c, k);
        s
    }

    /// Converts an element of a quadratic extension (or a plain rational).
    pub fn from_quadratic(a: &AlgebraicElement) -> Option<Self> {
        match a.extension() {
            None => Some(Self::from_rational(a.coeffs()[0].clone())),
            Some(ext) if ext.degree() == 2 => {
                let mut s = Self::from_rational(a.coeffs()[0].clone());
                s.push(a.coeffs()[1].clone(), ext.radicand().clone());
                Some(s)
            }
            Some(_) => None,
        }
    }

    fn push(&mut self, c: BigRational, k: BigInt) {
        if c.is_zero() {
            return;
        }
        assert!(k.is_positive(), "radicand must be positive");
        let r = k.sqrt();
        if &r * &r == k {
            self.rational += c * BigRational::from_integer(r);
            return;
        }
        for (ci, ki) in self.terms.iter_mut() {
            let prod = &k * &*ki;
            let m = prod.sqrt();
            if &m * &m == prod {
                // sqrt(k) = (m / k_i) * sqrt(k_i)
                *ci += c * BigRational::new(m, ki.clone());
                return;
            }
        }
        self.terms.push((c, k));
    }

    fn compact(mut self) -> Self {
        self.terms.retain(|(c, _)| !c.is_zero());
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.rational += &other.rational;
        for (c, k) in &other.terms {
            out.push(c.clone(), k.clone());
        }
        out.compact()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        QuadSurdSum {
            rational: &self.rational * q,
            terms: self.terms.iter().map(|(c, k)| (c * q, k.clone())).collect(),
        }
        .compact()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.terms.is_empty().then(|| self.rational.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.terms.is_empty()
    }

    /// Interval enclosure using `bits`-bit square-root enclosures.
    pub fn enclosure(&self, bits: u64) -> (BigRational, BigRational) {
        let mut lo = self.rational.clone();
        let mut hi = lo.clone();
        let den = BigRational::from_integer(BigInt::one() << bits);
        for (c, k) in &self.terms {
            let r = (k << (2 * bits)).sqrt();
            let rlo = BigRational::from_integer(r.clone()) / &den;
            let rhi = BigRational::from_integer(r + 1) / &den;
            let (a, b) = (c * rlo, c * rhi);
            if a <= b {
                lo += a;
                hi += b;
            } else {
                lo += b;
                hi += a;
            }
        }
        (lo, hi)
    }

    pub fn sign(&self) -> Ordering {
        if self.terms.is_empty() {
            return self.rational.cmp(&BigRational::zero());
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }
}
