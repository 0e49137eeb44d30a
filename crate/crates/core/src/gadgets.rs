//! The small example systems, each bundled with landmark points whose exact
//! verdicts are re-checked whenever a bundle is built.
//!
//! Variable orders:
//!
//! | gadget     | variables                 |
//! |------------|---------------------------|
//! | h          | `y1, y2`                  |
//! | tiny       | `s, d1..dn`               |
//! | khachiyan  | `y1..yn`                  |
//! | badboy     | `x1, x2, d1..dN`          |
//! | socp       | `x0, x1, x2, x3`          |
//! | unlucky    | `z1, z2`                  |
//!
//! The badboy system uses right-hand side 2 in its ellipse constraint while the
//! unlucky system uses 4; both are generated exactly as stated.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratcore::{format_rational, int, pow2, rat};
use crate::systems::Point;
use crate::{AlgebraicElement, Extension, PolySystem, Polynomial};

/// Bounds of `R_gamma = [1.259 - gamma, 1.26] x [1.587, 1.59]` as `(p, q)` pairs:
/// `y1 >= 1259/1000 - gamma`, `y1 <= 126/100`, `y2 >= 1587/1000`, `y2 <= 159/100`.
pub const R_GAMMA_BOUNDS: [(i64, i64); 4] = [(1259, 1000), (126, 100), (1587, 1000), (159, 100)];

/// `h(y) = 2 y1^3 + y2^3 - 6 y1 y2 + 4` embedded in `n` variables.
pub fn h_polynomial(n: usize, y1: usize, y2: usize) -> Polynomial {
    let a = Polynomial::var(n, y1);
    let b = Polynomial::var(n, y2);
    a.pow(3).scale(&int(2)) + b.pow(3) - (a * b).scale(&int(6)) + Polynomial::constant(n, int(4))
}

/// `y* = (2^{1/3}, 2^{2/3})` in `Q[t]/(t^3 - 2)`.
pub fn y_star() -> [AlgebraicElement; 2] {
    let ext = Extension::cbrt(2).expect("2 is not a cube");
    let t = AlgebraicElement::generator(&ext);
    let t2 = t.clone() * t.clone();
    [t, t2]
}

/// What a landmark is expected to produce when plugged into its system.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    Feasible,
    Infeasible,
    /// Infeasible with this exact worst violation, reached at constraints with these labels.
    Violation { amount: String, labels: Vec<String> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Landmark {
    pub name: String,
    pub point: Point,
    pub expect: Expect,
}

/// A system, optional objective (to maximize), and its self-checked landmarks.
#[derive(Debug, Clone, PartialEq)]
pub struct GadgetBundle {
    pub name: String,
    pub system: PolySystem,
    pub objective: Option<Polynomial>,
    pub landmarks: Vec<Landmark>,
    pub notes: Vec<String>,
}

/// Exact verdict summary at a rational or algebraic point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCheck {
    pub feasible: bool,
    pub worst_violation: AlgebraicElement,
    pub violated: Vec<usize>,
}

pub fn check_point(sys: &PolySystem, p: &Point) -> Result<PointCheck> {
    match p {
        Point::Rational(x) => {
            let v = sys.verify(x)?;
            Ok(PointCheck {
                feasible: v.feasible,
                violated: v.violated_indices(sys),
                worst_violation: AlgebraicElement::rational(v.worst_violation),
            })
        }
        Point::Algebraic(x) => {
            let v = sys.verify_alg(x)?;
            Ok(PointCheck { feasible: v.feasible, violated: v.violated_indices(sys), worst_violation: v.worst_violation })
        }
    }
}

impl GadgetBundle {
    fn new(name: &str, system: PolySystem) -> Self {
        GadgetBundle { name: name.into(), system, objective: None, landmarks: Vec::new(), notes: Vec::new() }
    }

    fn landmark(&mut self, name: &str, point: Point, expect: Expect) {
        self.landmarks.push(Landmark { name: name.into(), point, expect });
    }

    /// Re-verifies every landmark exactly.
    pub fn validate(&self) -> Result<()> {
        for lm in &self.landmarks {
            let chk = check_point(&self.system, &lm.point)?;
            let ok = match &lm.expect {
                Expect::Feasible => chk.feasible,
                Expect::Infeasible => !chk.feasible,
                Expect::Violation { amount, labels } => {
                    let want = crate::ratcore::parse_rational(amount)?;
                    let got: Vec<String> = chk
                        .violated
                        .iter()
                        .map(|&i| self.system.constraints()[i].label.clone().unwrap_or_default())
                        .collect();
                    !chk.feasible && chk.worst_violation.to_rational() == Some(want) && &got == labels
                }
            };
            if !ok {
                return Err(Error::Internal(format!(
                    "gadget {} landmark {} does not match {:?} (worst violation {})",
                    self.name, lm.name, lm.expect, chk.worst_violation
                )));
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }
}

fn names(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

/// `{y in R_gamma, h(y) <= 0}`.
pub fn gadget_h(gamma: &BigRational) -> Result<GadgetBundle> {
    if gamma.is_negative() {
        return Err(Error::Precondition("gamma must be nonnegative".into()));
    }
    let mut sys = PolySystem::new(vec!["y1".into(), "y2".into()]);
    let y1 = Polynomial::var(2, 0);
    let y2 = Polynomial::var(2, 1);
    let c = |q: BigRational| Polynomial::constant(2, q);
    let [y1lo, y1hi, y2lo, y2hi] = R_GAMMA_BOUNDS.map(|(p, q)| rat(p, q));
    sys.add_le(c(y1lo.clone() - gamma) - y1.clone(), "R_gamma");
    sys.add_le(y1 - c(y1hi), "R_gamma");
    sys.add_le(c(y2lo) - y2.clone(), "R_gamma");
    sys.add_le(y2 - c(y2hi), "R_gamma");
    sys.add_le(h_polynomial(2, 0, 1), "h");

    let mut b = GadgetBundle::new("h", sys);
    b.landmark("y_star", Point::Algebraic(y_star().to_vec()), Expect::Feasible);
    let ybar = crate::reductions::Y_TILDE.map(|(p, q)| rat(p, q));
    // ybar_1 = -137/50 is inside R_gamma exactly when 1259/1000 - gamma <= -137/50
    let ybar_ok = y1lo - gamma <= ybar[0];
    b.landmark("y_bar", Point::Rational(ybar.to_vec()), if ybar_ok { Expect::Feasible } else { Expect::Infeasible });
    b.notes.push("on R_0 the only solution is y*; the rational scan over R_0 is evidence, not proof".into());
    b.finish()
}

/// The chain `0 <= d1 <= 1/2, 0 <= d_k <= d_{k-1}^2, 0 <= s <= d_n^2` over `(s, d1..dn)`.
pub fn gadget_tiny(n: usize) -> Result<GadgetBundle> {
    if n < 1 {
        return Err(Error::Precondition("tiny needs n >= 1".into()));
    }
    let nv = n + 1;
    let mut v = vec!["s".to_string()];
    v.extend(names("d", 1..=n));
    let mut sys = PolySystem::new(v);
    let var = |i| Polynomial::var(nv, i);
    sys.add_le(-var(1), "d1>=0");
    sys.add_le(var(1) - Polynomial::constant(nv, rat(1, 2)), "d1<=1/2");
    for k in 2..=n {
        sys.add_le(-var(k), &format!("d{k}>=0"));
        sys.add_le(var(k) - var(k - 1).pow(2), &format!("d{k}<=d{}^2", k - 1));
    }
    sys.add_le(-var(0), "s>=0");
    sys.add_le(var(0) - var(n).pow(2), &format!("s<=d{n}^2"));

    let mut b = GadgetBundle::new("tiny", sys);
    b.landmark("max_s", Point::Rational(tiny_landmark(n)), Expect::Feasible);
    b.landmark("zero", Point::Rational(vec![int(0); nv]), Expect::Feasible);
    b.finish()
}

/// `(s, d1..dn)` with `d_k = 2^{-2^{k-1}}` and `s = 2^{-2^n}`.
pub fn tiny_landmark(n: usize) -> Vec<BigRational> {
    let mut v = vec![pow2(-(1i64 << n))];
    v.extend((1..=n).map(|k| pow2(-(1i64 << (k - 1)))));
    v
}

/// `y1 >= 2, y_{i+1} >= y_i^2`.
pub fn gadget_khachiyan(n: usize) -> Result<GadgetBundle> {
    if n < 1 {
        return Err(Error::Precondition("khachiyan needs n >= 1".into()));
    }
    let mut sys = PolySystem::new(names("y", 1..=n));
    let var = |i| Polynomial::var(n, i);
    sys.add_le(Polynomial::constant(n, int(2)) - var(0), "y1>=2");
    for i in 1..n {
        sys.add_le(var(i - 1).pow(2) - var(i), &format!("y{}>=y{}^2", i + 1, i));
    }
    let mut b = GadgetBundle::new("khachiyan", sys);
    b.landmark("tight_chain", Point::Rational(khachiyan_landmark(n)), Expect::Feasible);
    b.finish()
}

/// `y_i = 2^{2^{i-1}}`.
pub fn khachiyan_landmark(n: usize) -> Vec<BigRational> {
    (1..=n).map(|i| pow2(1i64 << (i - 1))).collect()
}

/// The badboy QCQP (maximize `x2`) over `(x1, x2, d1..dN)`.
///
/// Two landmarks are kept. `verbatim` is the point as usually stated
/// (`d1 = 1/2`, `d_i = 2^{-2^i}`, `d_N = 0`); it violates `d1^2 <= d2` by 3/16.
/// `spread` keeps `x = (0, sqrt 2)` but sets `d_N = 2^{-2^{N-1}}`,
/// `d1 = 1/2 - d_N` and `d_{i+1} = d_i^2`, which is feasible everywhere except
/// `bby1`, violated by exactly `2^{-2^N}`. True optimum is below 1.23.
pub fn gadget_badboy(n: usize) -> Result<GadgetBundle> {
    if n < 2 {
        return Err(Error::Precondition("badboy needs N >= 2".into()));
    }
    let nv = n + 2;
    let mut v = vec!["x1".to_string(), "x2".to_string()];
    v.extend(names("d", 1..=n));
    let mut sys = PolySystem::new(v);
    let var = |i| Polynomial::var(nv, i);
    let c = |q: BigRational| Polynomial::constant(nv, q);
    let (x1, x2) = (var(0), var(1));
    let d = |i: usize| var(1 + i);
    sys.add_le(c(int(3)) - (x1.clone() - c(int(1))).pow(2) - x2.pow(2) + d(n).pow(2), "bby1");
    sys.add_le(c(int(3)) - (x1.clone() + c(int(1))).pow(2) - x2.pow(2), "bby2");
    sys.add_le(x1.pow(2).scale(&rat(1, 10)) + x2.pow(2) - c(int(2)), "bby3");
    sys.add_eq(d(1) + d(n) - c(rat(1, 2)), "d1+dN");
    sys.add_le(-d(1), "d1>=0");
    for i in 1..n {
        sys.add_le(d(i).pow(2) - d(i + 1), &format!("d{i}^2<=d{}", i + 1));
    }

    let ext = Extension::sqrt(2)?;
    let sqrt2 = AlgebraicElement::generator(&ext);
    let lift = |ds: Vec<BigRational>| {
        let mut p = vec![AlgebraicElement::rational(int(0)), sqrt2.clone()];
        p.extend(ds.into_iter().map(AlgebraicElement::rational));
        Point::Algebraic(p)
    };

    let mut b = GadgetBundle::new("badboy", sys);
    b.objective = Some(x2);
    let mut verbatim = vec![rat(1, 2)];
    verbatim.extend((2..n).map(|i| pow2(-(1i64 << i))));
    verbatim.push(int(0));
    // d1^2 <= d2 fails by 3/16 (by 1/4 when N = 2) and d_{N-1}^2 <= d_N by 2^{-2^N}
    let (amount, labels) = if n == 2 {
        (rat(1, 4), vec!["d1^2<=d2".to_string()])
    } else {
        (rat(3, 16), vec!["d1^2<=d2".to_string(), format!("d{}^2<=d{n}", n - 1)])
    };
    b.landmark("verbatim", lift(verbatim), Expect::Violation { amount: format_rational(&amount), labels });
    b.landmark(
        "spread",
        lift(badboy_spread_d(n)),
        Expect::Violation { amount: format_rational(&pow2(-(1i64 << n))), labels: vec!["bby1".into()] },
    );
    b.notes.push("every feasible point has x2 <= 1.228".into());
    b.finish()
}

/// `d_N = 2^{-2^{N-1}}`, `d1 = 1/2 - d_N`, `d_{i+1} = d_i^2` for `i < N - 1`.
pub fn badboy_spread_d(n: usize) -> Vec<BigRational> {
    let dn = pow2(-(1i64 << (n - 1)));
    let mut d = vec![rat(1, 2) - &dn];
    for _ in 2..n {
        let last = d.last().unwrap().clone();
        d.push(&last * &last);
    }
    d.push(dn);
    d
}

/// Squared second-order cone system for a Pythagorean quadruple `(a, b, c, d)`,
/// over `(x0, x1, x2, x3)`.
pub fn gadget_socp(a: i64, b: i64, c: i64, d: i64) -> Result<GadgetBundle> {
    if a <= 0 || b <= 0 || c <= 0 || d <= 0 {
        return Err(Error::Precondition("entries must be positive".into()));
    }
    if a * a + b * b + c * c != d * d {
        return Err(Error::Precondition(format!("({a},{b},{c},{d}) is not a Pythagorean quadruple")));
    }
    let mut sys = PolySystem::new(names("x", 0..=3));
    let var = |i| Polynomial::var(4, i);
    let k = |v: i64| Polynomial::constant(4, int(v));
    sys.add_le(var(1).pow(2) + var(2).pow(2) - var(0).pow(2), "cone1");
    sys.add_le(-var(0), "x0>=0");
    sys.add_le(var(0).pow(2) + var(3).pow(2) - k(d * d), "cone2");
    sys.add_le(k(a) - var(1), "x1>=a");
    sys.add_le(k(b) - var(2), "x2>=b");
    sys.add_le(k(c) - var(3), "x3>=c");

    let r = a * a + b * b;
    let x0 = match crate::ratcore::rational_sqrt(&int(r))? {
        Some(q) => AlgebraicElement::rational(q),
        None => AlgebraicElement::generator(&Extension::sqrt(r)?),
    };
    let mut pt = vec![x0];
    pt.extend([a, b, c].map(|v| AlgebraicElement::rational(int(v))));
    let mut bundle = GadgetBundle::new("socp", sys);
    bundle.landmark("x0=sqrt(a^2+b^2)", Point::Algebraic(pt), Expect::Feasible);
    bundle.finish()
}

/// `(z1-1)^2 + z2^2 >= 5 + sigma, (z1+1)^2 + z2^2 >= 5, z1^2/10 + z2^2 <= 4, z2 >= 0`.
pub fn gadget_unlucky(sigma: &BigRational) -> Result<GadgetBundle> {
    if sigma.is_negative() || sigma > &BigRational::one() {
        return Err(Error::Precondition("sigma must lie in [0, 1]".into()));
    }
    let mut sys = PolySystem::new(vec!["z1".into(), "z2".into()]);
    let (z1, z2) = (Polynomial::var(2, 0), Polynomial::var(2, 1));
    let c = |q: BigRational| Polynomial::constant(2, q);
    let one = c(int(1));
    sys.add_le(c(int(5) + sigma) - (z1.clone() - one.clone()).pow(2) - z2.pow(2), "O1");
    sys.add_le(c(int(5)) - (z1.clone() + one).pow(2) - z2.pow(2), "O2");
    sys.add_le(z1.pow(2).scale(&rat(1, 10)) + z2.pow(2) - c(int(4)), "E");
    sys.add_le(-z2, "z2>=0");
    let mut b = GadgetBundle::new("unlucky", sys);
    let top = if sigma.is_zero() {
        Expect::Feasible
    } else {
        Expect::Violation { amount: format_rational(sigma), labels: vec!["O1".into()] }
    };
    b.landmark("(0,2)", Point::Rational(vec![int(0), int(2)]), top);
    b.landmark("(-3,3/2)", Point::Rational(vec![int(-3), rat(3, 2)]), Expect::Feasible);
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::encoding_size;

    #[test]
    fn h_landmarks() {
        let g0 = gadget_h(&int(0)).unwrap();
        assert_eq!(g0.landmarks[1].expect, Expect::Infeasible);
        let g4 = gadget_h(&int(4)).unwrap();
        assert_eq!(g4.landmarks[1].expect, Expect::Feasible);
        assert!(gadget_h(&int(-1)).is_err());
    }

    #[test]
    fn tiny_and_khachiyan() {
        let t = gadget_tiny(3).unwrap();
        assert_eq!(tiny_landmark(3)[0], rat(1, 256));
        assert_eq!(t.system.num_vars(), 4);
        assert!(encoding_size(&tiny_landmark(10)[0]) >= 1024);
        let k = gadget_khachiyan(3).unwrap();
        let v = k.system.verify(&khachiyan_landmark(3)).unwrap();
        assert!(v.residuals.iter().all(|r| r.is_zero() || r == &int(0)));
        assert_eq!(khachiyan_landmark(3), vec![int(2), int(4), int(16)]);
    }

    #[test]
    fn badboy_and_socp() {
        for n in 2..=6 {
            gadget_badboy(n).unwrap();
        }
        gadget_socp(1, 2, 2, 3).unwrap();
        gadget_socp(2, 3, 6, 7).unwrap();
        assert!(gadget_socp(1, 1, 1, 2).is_err());
    }

    #[test]
    fn unlucky_sigma() {
        gadget_unlucky(&int(0)).unwrap();
        gadget_unlucky(&rat(1, 2)).unwrap();
        assert!(gadget_unlucky(&int(2)).is_err());
    }
}
