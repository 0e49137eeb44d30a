//! Exact linear algebra over the rationals and small-dimensional polytope helpers.

use num_rational::BigRational;
use num_traits::{One, Zero};

type Mat = Vec<Vec<BigRational>>;

/// Row-reduces `m` in place to reduced echelon form and returns the pivot columns.
pub fn rref(m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (v, p) in m[i].iter_mut().zip(&pivot_row).take(cols) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &[Vec<BigRational>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}

/// Unique solution of the square system `a x = b`, if `a` is nonsingular.
pub fn solve_square(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Mat = a.iter().zip(b).map(|(row, bi)| {
        let mut r = row.clone();
        r.push(bi.clone());
        r
    }).collect();
    let piv = rref(&mut m);
    if piv.len() != n || piv.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Basis of `{x : a x = 0}` for `cols` unknowns.
pub fn nullspace(a: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m = a.to_vec();
    let piv = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Indices of a maximal linearly independent subset of rows, chosen greedily in order.
pub fn independent_rows(a: &[Vec<BigRational>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Mat = Vec::new();
    for (i, row) in a.iter().enumerate() {
        basis.push(row.clone());
        if rank(&basis) == basis.len() {
            chosen.push(i);
        } else {
            basis.pop();
        }
    }
    chosen
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Orthogonal projection of `x` onto `{y : a y = b}` (rows of `a` independent).
pub fn project_affine(a: &[Vec<BigRational>], b: &[BigRational], x: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() {
        return x.to_vec();
    }
    let gram: Mat = a.iter().map(|r| a.iter().map(|s| dot(r, s)).collect()).collect();
    let resid: Vec<BigRational> = a.iter().zip(b).map(|(r, bi)| dot(r, x) - bi).collect();
    let mu = solve_square(&gram, &resid).expect("rows must be independent");
    let mut y = x.to_vec();
    for (r, m) in a.iter().zip(&mu) {
        for (yj, rj) in y.iter_mut().zip(r) {
            *yj -= m * rj;
        }
    }
    y
}

/// Polyhedron `{x : a x <= b}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyhedron {
    pub n: usize,
    pub a: Mat,
    pub b: Vec<BigRational>,
}

impl Polyhedron {
    pub fn new(n: usize) -> Self {
        Polyhedron { n, a: Vec::new(), b: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<BigRational>, rhs: BigRational) {
        assert_eq!(row.len(), self.n);
        self.a.push(row);
        self.b.push(rhs);
    }

    /// Adds `lo <= x_i <= hi`.
    pub fn push_bounds(&mut self, i: usize, lo: &BigRational, hi: &BigRational) {
        let mut e = vec![BigRational::zero(); self.n];
        e[i] = BigRational::one();
        self.push(e.clone(), hi.clone());
        e[i] = -BigRational::one();
        self.push(e, -lo.clone());
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.a.iter().zip(&self.b).all(|(r, bi)| &dot(r, x) <= bi)
    }

    /// Rows tight at `x`.
    pub fn active(&self, x: &[BigRational]) -> Vec<usize> {
        (0..self.a.len()).filter(|&i| dot(&self.a[i], x) == self.b[i]).collect()
    }

    pub fn in_recession_cone(&self, v: &[BigRational]) -> bool {
        self.a.iter().all(|r| dot(r, v) <= BigRational::zero())
    }

    /// All vertices, deduplicated and sorted lexicographically.
    pub fn vertices(&self) -> Vec<Vec<BigRational>> {
        let mut out = Vec::new();
        for subset in combinations(self.a.len(), self.n) {
            let a: Mat = subset.iter().map(|&i| self.a[i].clone()).collect();
            let b: Vec<_> = subset.iter().map(|&i| self.b[i].clone()).collect();
            if let Some(x) = solve_square(&a, &b) {
                if self.contains(&x) {
                    out.push(x);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// True when the recession cone `{r : a r <= 0}` is `{0}`.
    pub fn is_bounded(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        if rank(&self.a) < self.n {
            return false;
        }
        // A pointed cone other than {0} has an extreme ray on which n-1 independent rows are tight.
        for subset in combinations(self.a.len(), self.n - 1) {
            let sub: Mat = subset.iter().map(|&i| self.a[i].clone()).collect();
            let ns = nullspace(&sub, self.n);
            if ns.len() != 1 {
                continue;
            }
            let r = &ns[0];
            let neg: Vec<_> = r.iter().map(|v| -v.clone()).collect();
            if self.in_recession_cone(r) || self.in_recession_cone(&neg) {
                return false;
            }
        }
        true
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
