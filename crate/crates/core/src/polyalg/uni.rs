use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Dense univariate polynomial, lowest degree first, with no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Univariate<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Univariate<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Univariate { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `lambda`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Univariate<U> {
        Univariate::new(self.coeffs.iter().map(f).collect())
    }
}

/// Isolating interval for one real root: the root lies in the open interval
/// `(lo, hi)`, or equals `lo` when `lo == hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        if self.is_exact() {
            x == &self.lo
        } else {
            &self.lo < x && x < &self.hi
        }
    }
}

fn sign(q: &BigRational) -> Ordering {
    q.cmp(&BigRational::zero())
}

impl Univariate<BigRational> {
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = &r[i] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                r[i - dd + j] -= &c * b;
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same real roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone()];
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = seq.last().unwrap().div_rem(&next).1;
            seq.push(next);
            next = -r;
        }
        seq
    }

    fn sign_changes(seq: &[Self], x: &BigRational) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in seq {
            let s = sign(&p.eval(x));
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the open interval `(a, b)`; `a` and `b`
    /// must not be roots.
    pub fn count_roots_between(&self, a: &BigRational, b: &BigRational) -> usize {
        let seq = self.squarefree_part().sturm_sequence();
        Self::sign_changes(&seq, a).saturating_sub(Self::sign_changes(&seq, b))
    }

    /// `1 + max |a_i / a_n|`, a strict bound on the absolute value of every root.
    pub fn root_magnitude_bound(&self) -> BigRational {
        let n = self.degree().unwrap_or(0);
        let lead = self.coeffs[n].abs();
        let mut m = BigRational::zero();
        for c in &self.coeffs[..n] {
            let r = c.abs() / &lead;
            if r > m {
                m = r;
            }
        }
        m + BigRational::one()
    }

    /// Isolates every distinct real root by Sturm counts and bisection, in
    /// increasing order. Panics on the zero polynomial.
    pub fn isolate_real_roots(&self) -> Vec<RootInterval> {
        assert!(!self.is_zero(), "root isolation of the zero polynomial");
        let p = self.squarefree_part();
        if p.degree() == Some(0) {
            return Vec::new();
        }
        let seq = p.sturm_sequence();
        let b = p.root_magnitude_bound() + BigRational::one();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let count = Self::sign_changes(&seq, &lo) - Self::sign_changes(&seq, &hi);
            match count {
                0 => {}
                1 => out.push(RootInterval { lo, hi }),
                _ => {
                    let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                    if p.eval(&mid).is_zero() {
                        let eps = (&hi - &lo) / BigRational::from_integer(1024.into());
                        let (a, b) = nonroot_split(&p, &mid, &eps);
                        out.push(RootInterval { lo: mid.clone(), hi: mid });
                        stack.push((b, hi));
                        stack.push((lo, a));
                    } else {
                        stack.push((mid.clone(), hi));
                        stack.push((lo, mid));
                    }
                }
            }
        }
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        out
    }

    /// Shrinks an isolating interval of a root of `self` below `width`.
    pub fn refine_root(&self, iv: &RootInterval, width: &BigRational) -> RootInterval {
        let p = self.squarefree_part();
        let mut iv = iv.clone();
        let two = BigRational::from_integer(2.into());
        while !iv.is_exact() && &(&iv.hi - &iv.lo) > width {
            let mid = (&iv.lo + &iv.hi) / &two;
            let fm = p.eval(&mid);
            if fm.is_zero() {
                return RootInterval { lo: mid.clone(), hi: mid };
            }
            if sign(&p.eval(&iv.lo)) == sign(&fm) {
                iv.lo = mid;
            } else {
                iv.hi = mid;
            }
        }
        iv
    }
}

/// Points `a < mid < b` within `eps` of a root `mid`, with no root in `[a, b]`
/// other than `mid`.
fn nonroot_split(
    p: &Univariate<BigRational>,
    mid: &BigRational,
    eps: &BigRational,
) -> (BigRational, BigRational) {
    let mut e = eps.clone();
    let two = BigRational::from_integer(2.into());
    loop {
        let (a, b) = (mid - &e, mid + &e);
        if !p.eval(&a).is_zero()
            && !p.eval(&b).is_zero()
            && p.count_roots_between(&a, &b) == 1
        {
            return (a, b);
        }
        e /= &two;
    }
}

impl<T: Scalar> Zero for Univariate<T> {
    fn zero() -> Self {
        Univariate { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> One for Univariate<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Scalar> Add for Univariate<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        for (i, c) in short.coeffs.into_iter().enumerate() {
            long.coeffs[i] = long.coeffs[i].clone() + c;
        }
        Self::new(long.coeffs)
    }
}

impl<T: Scalar> Neg for Univariate<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Univariate { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<T: Scalar> Sub for Univariate<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Mul for Univariate<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<T: Scalar> Scalar for Univariate<T> {
    fn from_rational(q: &BigRational) -> Self {
        Self::constant(T::from_rational(q))
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Univariate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*l"),
                _ => format!("({c})*l^{i}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
