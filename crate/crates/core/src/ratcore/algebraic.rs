use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{biguint_to_rat, ceil_to_int, dyadic_round, floor_to_int, RatStr};
use crate::error::{Error, Result};
use crate::scalar::{ExactSign, Scalar};

/// The field `Q[t]/(t^e - k)` with `e` in {2, 3} and `k` a positive integer that is
/// not a perfect `e`-th power. `t` is identified with the positive real root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Extension {
    degree: u32,
    radicand: BigInt,
}

impl Extension {
    pub fn new(degree: u32, radicand: impl Into<BigInt>) -> Result<Self> {
        let radicand = radicand.into();
        if degree != 2 && degree != 3 {
            return Err(Error::InvalidExtension(format!("degree {degree} not in {{2, 3}}")));
        }
        if !radicand.is_positive() {
            return Err(Error::InvalidExtension(format!("radicand {radicand} not positive")));
        }
        let r = radicand.magnitude().nth_root(degree);
        if num_traits::pow(r, degree as usize) == *radicand.magnitude() {
            return Err(Error::InvalidExtension(format!(
                "{radicand} is a perfect power of degree {degree}"
            )));
        }
        Ok(Extension { degree, radicand })
    }

    /// `Q(sqrt k)`.
    pub fn sqrt(k: i64) -> Result<Self> {
        Self::new(2, k)
    }

    /// `Q(k^(1/3))`.
    pub fn cbrt(k: i64) -> Result<Self> {
        Self::new(3, k)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    /// Rational enclosure `lo < k^(1/e) < hi` with `hi - lo = 2^-bits`.
    pub fn root_enclosure(&self, bits: u64) -> (BigRational, BigRational) {
        let scaled: BigUint = self.radicand.magnitude() << (bits * self.degree as u64);
        let r = scaled.nth_root(self.degree);
        let den = BigRational::from_integer(BigInt::one() << bits);
        let lo = biguint_to_rat(r.clone()) / &den;
        let hi = biguint_to_rat(r + 1u32) / den;
        (lo, hi)
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[t]/(t^{} - {})", self.degree, self.radicand)
    }
}

/// An element `c_0 + c_1 t (+ c_2 t^2)` of an [`Extension`].
///
/// A value created from a rational carries no extension and combines with any
/// element. Operators panic when two elements live in different extensions;
/// use the `checked_*` methods to get an error instead.
#[derive(Debug, Clone)]
pub struct AlgebraicElement {
    ext: Option<Extension>,
    coeffs: Vec<BigRational>,
}

impl AlgebraicElement {
    pub fn rational(q: BigRational) -> Self {
        AlgebraicElement { ext: None, coeffs: vec![q] }
    }

    /// Element with the given coefficients, padded with zeros to length `e`.
    pub fn new(ext: &Extension, coeffs: Vec<BigRational>) -> Result<Self> {
        let e = ext.degree as usize;
        if coeffs.len() > e {
            return Err(Error::DimensionMismatch { expected: e, got: coeffs.len() });
        }
        let mut coeffs = coeffs;
        coeffs.resize(e, BigRational::zero());
        Ok(AlgebraicElement { ext: Some(ext.clone()), coeffs })
    }

    /// The generator `t = k^(1/e)`.
    pub fn generator(ext: &Extension) -> Self {
        let mut c = vec![BigRational::zero(); ext.degree as usize];
        c[1] = BigRational::one();
        AlgebraicElement { ext: Some(ext.clone()), coeffs: c }
    }

    /// The rational `q` viewed inside `ext`.
    pub fn embed(q: BigRational, ext: &Extension) -> Self {
        Self::new(ext, vec![q]).expect("single coefficient always fits")
    }

    pub fn extension(&self) -> Option<&Extension> {
        self.ext.as_ref()
    }

    /// Coefficients `c_0..c_{e-1}` (a single entry for pure rationals).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    fn join(&self, other: &Self) -> Result<Option<Extension>> {
        match (&self.ext, &other.ext) {
            (None, e) | (e, None) => Ok(e.clone()),
            (Some(a), Some(b)) if a == b => Ok(Some(a.clone())),
            (Some(a), Some(b)) => Err(Error::ExtensionMismatch(format!("{a} vs {b}"))),
        }
    }

    fn padded(&self, ext: &Option<Extension>) -> Vec<BigRational> {
        let mut c = self.coeffs.clone();
        if let Some(e) = ext {
            c.resize(e.degree as usize, BigRational::zero());
        }
        c
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let ext = self.join(other)?;
        let (a, b) = (self.padded(&ext), other.padded(&ext));
        let coeffs = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        Ok(AlgebraicElement { ext, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other.clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let ext = self.join(other)?;
        let (a, b) = (self.padded(&ext), other.padded(&ext));
        let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        Ok(AlgebraicElement { coeffs: reduce(prod, &ext), ext })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// coefficient polynomial and `t^e - k`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Contract("inverse of zero".into()));
        }
        let ext = match &self.ext {
            None => return Ok(Self::rational(self.coeffs[0].recip())),
            Some(e) => e.clone(),
        };
        let e = ext.degree as usize;
        let mut modulus = vec![BigRational::zero(); e + 1];
        modulus[0] = -BigRational::from_integer(ext.radicand.clone());
        modulus[e] = BigRational::one();
        let (g, s) = ext_gcd_left(trim(self.coeffs.clone()), modulus);
        // g is a nonzero constant because t^e - k is irreducible.
        debug_assert_eq!(g.len(), 1);
        let inv_g = g[0].recip();
        let coeffs: Vec<_> = s.into_iter().map(|c| c * &inv_g).collect();
        Ok(AlgebraicElement { coeffs: reduce(coeffs, &Some(ext.clone())), ext: Some(ext) })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_like(self);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn one_like(x: &Self) -> Self {
        match &x.ext {
            None => Self::one(),
            Some(e) => Self::embed(BigRational::one(), e),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        AlgebraicElement { ext: self.ext.clone(), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Rational interval containing the real value, from a `bits`-bit root enclosure.
    pub fn enclosure(&self, bits: u64) -> (BigRational, BigRational) {
        let ext = match &self.ext {
            None => return (self.coeffs[0].clone(), self.coeffs[0].clone()),
            Some(e) => e,
        };
        let (rlo, rhi) = ext.root_enclosure(bits);
        let mut lo = self.coeffs[0].clone();
        let mut hi = lo.clone();
        let (mut plo, mut phi) = (BigRational::one(), BigRational::one());
        for c in &self.coeffs[1..] {
            // Powers of the positive root stay positive and increase with it.
            plo *= &rlo;
            phi *= &rhi;
            let (a, b) = (c * &plo, c * &phi);
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

    /// Exact sign: zero iff every coefficient is zero, otherwise decided by
    /// refining the root enclosure from 64 bits, doubling.
    pub fn sign(&self) -> Ordering {
        if self.is_rational() {
            return self.coeffs[0].cmp(&BigRational::zero());
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

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        (self.clone() - Self::rational(q.clone())).sign()
    }

    pub fn floor(&self) -> BigInt {
        if let Some(q) = self.to_rational() {
            return floor_to_int(&q);
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = self.enclosure(bits);
            let (a, b) = (floor_to_int(&lo), floor_to_int(&hi));
            if a == b {
                return a;
            }
            // The value is irrational, so it is never exactly the integer b.
            if self.cmp_rational(&BigRational::from_integer(b.clone())) == Ordering::Greater {
                return b;
            }
            if a.clone() + 1 == b {
                return a;
            }
            bits *= 2;
        }
    }

    pub fn ceil(&self) -> BigInt {
        match self.to_rational() {
            Some(q) => ceil_to_int(&q),
            None => self.floor() + 1,
        }
    }

    /// Dyadic approximation within `2^-bits` of the value.
    pub fn to_dyadic(&self, bits: u64) -> BigRational {
        if let Some(q) = self.to_rational() {
            return dyadic_round(&q, bits);
        }
        let mut b = bits + 8;
        loop {
            let (lo, hi) = self.enclosure(b);
            let width = &hi - &lo;
            if width * BigRational::from_integer(BigInt::one() << (bits + 2)) <= BigRational::one() {
                let mid = (lo + hi) / BigRational::from_integer(2.into());
                return dyadic_round(&mid, bits);
            }
            b *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_dyadic(64).to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_json(&self) -> AlgebraicJson {
        let (e, k) = match &self.ext {
            Some(x) => (x.degree, x.radicand.clone()),
            None => (1, BigInt::one()),
        };
        AlgebraicJson { e, k: k.to_string(), coeffs: self.coeffs.iter().cloned().map(RatStr).collect() }
    }

    pub fn from_json(j: &AlgebraicJson) -> Result<Self> {
        let coeffs: Vec<_> = j.coeffs.iter().map(|c| c.0.clone()).collect();
        if j.e == 1 {
            return match coeffs.as_slice() {
                [q] => Ok(Self::rational(q.clone())),
                _ => Err(Error::Parse("rational element needs one coefficient".into())),
            };
        }
        let k: BigInt = j.k.parse().map_err(|_| Error::Parse(format!("bad radicand {}", j.k)))?;
        Self::new(&Extension::new(j.e, k)?, coeffs)
    }
}

/// Serialized element: `{e, k, coeffs}` with `e = 1` meaning a plain rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicJson {
    pub e: u32,
    pub k: String,
    pub coeffs: Vec<RatStr>,
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    if v.is_empty() {
        v.push(BigRational::zero());
    }
    v
}

fn reduce(mut prod: Vec<BigRational>, ext: &Option<Extension>) -> Vec<BigRational> {
    let ext = match ext {
        None => return vec![prod.into_iter().next().unwrap_or_else(BigRational::zero)],
        Some(e) => e,
    };
    let e = ext.degree as usize;
    let k = BigRational::from_integer(ext.radicand.clone());
    for j in (e..prod.len()).rev() {
        let c = std::mem::take(&mut prod[j]);
        if !c.is_zero() {
            prod[j - e] += c * &k;
        }
    }
    prod.resize(e, BigRational::zero());
    prod
}

fn poly_div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    if r.len() <= db {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = &r[i] / &b[db];
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i - db + j] -= &c * bc;
        }
        q[i - db] = c;
    }
    r.truncate(db.max(1));
    (trim(q), trim(r))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

/// Returns `(g, s)` with `s*a = g (mod m)` and `g = gcd(a, m)`.
fn ext_gcd_left(a: Vec<BigRational>, m: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (a, m);
    let (mut s0, mut s1) = (vec![BigRational::one()], vec![BigRational::zero()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_div_rem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl PartialEq for AlgebraicElement {
    fn eq(&self, other: &Self) -> bool {
        match self.join(other) {
            Ok(ext) => self.padded(&ext) == other.padded(&ext),
            Err(_) => match (self.to_rational(), other.to_rational()) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            },
        }
    }
}

impl Zero for AlgebraicElement {
    fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for AlgebraicElement {
    fn one() -> Self {
        Self::rational(BigRational::one())
    }
}

impl Add for AlgebraicElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("extension mismatch in addition")
    }
}

impl Sub for AlgebraicElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("extension mismatch in subtraction")
    }
}

impl Mul for AlgebraicElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("extension mismatch in multiplication")
    }
}

impl Neg for AlgebraicElement {
    type Output = Self;
    fn neg(self) -> Self {
        AlgebraicElement { ext: self.ext, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Scalar for AlgebraicElement {
    fn from_rational(q: &BigRational) -> Self {
        Self::rational(q.clone())
    }
}

impl ExactSign for AlgebraicElement {
    fn exact_sign(&self) -> Ordering {
        self.sign()
    }
}

impl fmt::Display for AlgebraicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && !(i == 0 && self.is_zero()) {
                continue;
            }
            parts.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            });
        }
        write!(f, "{}", parts.join(" + "))?;
        if let Some(e) = &self.ext {
            write!(f, " in {e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::{int, rat};

    fn el(ext: &Extension, c: &[i64]) -> AlgebraicElement {
        AlgebraicElement::new(ext, c.iter().map(|&v| int(v)).collect()).unwrap()
    }

    #[test]
    fn reduction_rule() {
        let c2 = Extension::cbrt(2).unwrap();
        let t = AlgebraicElement::generator(&c2);
        assert_eq!(t.clone() * (t.clone() * t.clone()), AlgebraicElement::rational(int(2)));
        let s5 = Extension::sqrt(5).unwrap();
        let u = AlgebraicElement::generator(&s5);
        assert_eq!(u.clone() * u, AlgebraicElement::rational(int(5)));
        let prod = el(&c2, &[1, 1]) * el(&c2, &[1, -1, 1]);
        assert_eq!(prod, AlgebraicElement::rational(int(3)));
    }

    #[test]
    fn signs() {
        let c2 = Extension::cbrt(2).unwrap();
        assert_eq!(el(&c2, &[0, 0, 0]).sign(), Ordering::Equal);
        assert_eq!(AlgebraicElement::generator(&c2).sign(), Ordering::Greater);
        let s2 = Extension::sqrt(2).unwrap();
        assert_eq!(el(&s2, &[-3, 2]).sign(), Ordering::Less);
        assert_eq!(el(&s2, &[3, -2]).sign(), Ordering::Greater);
        // 1 - t + t^2 with t = 2^(1/3) is about 1.327
        assert_eq!(el(&c2, &[1, -1, 1]).sign(), Ordering::Greater);
    }

    #[test]
    fn inverses() {
        let c2 = Extension::cbrt(2).unwrap();
        let a = el(&c2, &[1, 1, 0]);
        let inv = a.inverse().unwrap();
        assert_eq!(a * inv, AlgebraicElement::one());
        let s7 = Extension::sqrt(7).unwrap();
        let b = AlgebraicElement::new(&s7, vec![rat(3, 2), int(-5)]).unwrap();
        assert_eq!(b.clone() * b.inverse().unwrap(), AlgebraicElement::one());
        assert!(AlgebraicElement::zero().inverse().is_err());
    }

    #[test]
    fn rejects_bad_extensions() {
        assert!(Extension::new(2, 4).is_err());
        assert!(Extension::new(3, 8).is_err());
        assert!(Extension::new(4, 2).is_err());
        assert!(Extension::new(2, 0).is_err());
        let a = AlgebraicElement::generator(&Extension::sqrt(2).unwrap());
        let b = AlgebraicElement::generator(&Extension::sqrt(3).unwrap());
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn floors_and_dyadics() {
        let s2 = Extension::sqrt(2).unwrap();
        let r = AlgebraicElement::generator(&s2);
        assert_eq!(r.floor(), BigInt::from(1));
        assert_eq!((-r.clone()).floor(), BigInt::from(-2));
        assert_eq!(r.ceil(), BigInt::from(2));
        let d = r.to_dyadic(20);
        assert!((d.clone() - rat(1414214, 1000000)).abs() < rat(1, 100000));
        let json = r.to_json();
        assert_eq!(AlgebraicElement::from_json(&json).unwrap(), r);
    }
}
