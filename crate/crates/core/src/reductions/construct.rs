use num_bigint::BigInt;
use num_rational::BigRational;

use super::cnf::CnfFormula;
use crate::error::{Error, Result};
use crate::gadgets::{h_polynomial, R_GAMMA_BOUNDS};
use crate::ratcore::{int, rat};
use crate::{Monomial, PolySystem, Polynomial};

/// Positions of the variables in the main quadratic system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NpLayout {
    pub n: usize,
    pub quadratized: bool,
    pub with_z: bool,
}

impl NpLayout {
    pub fn new(n: usize, quadratized: bool) -> Self {
        NpLayout { n, quadratized, with_z: false }
    }

    /// `x_{j+1}` for `j` in `0..2n`.
    pub fn x(&self, j: usize) -> usize {
        j
    }
    pub fn gamma(&self) -> usize {
        2 * self.n
    }
    pub fn delta(&self) -> usize {
        2 * self.n + 1
    }
    pub fn y1(&self) -> usize {
        2 * self.n + 2
    }
    pub fn y2(&self) -> usize {
        2 * self.n + 3
    }
    /// `d_{k+1}` for `k` in `0..n`.
    pub fn d(&self, k: usize) -> usize {
        2 * self.n + 4 + k
    }
    pub fn s(&self) -> usize {
        3 * self.n + 4
    }
    pub fn y12(&self) -> Option<usize> {
        self.quadratized.then_some(3 * self.n + 5)
    }
    pub fn y22(&self) -> Option<usize> {
        self.quadratized.then_some(3 * self.n + 6)
    }
    fn base_vars(&self) -> usize {
        3 * self.n + 5 + if self.quadratized { 2 } else { 0 }
    }
    pub fn z1(&self) -> Option<usize> {
        self.with_z.then(|| self.base_vars())
    }
    pub fn z2(&self) -> Option<usize> {
        self.with_z.then(|| self.base_vars() + 1)
    }
    pub fn num_vars(&self) -> usize {
        self.base_vars() + if self.with_z { 2 } else { 0 }
    }

    pub fn names(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..=2 * self.n).map(|j| format!("x{j}")).collect();
        v.extend(["gamma", "Delta", "y1", "y2"].map(String::from));
        v.extend((1..=self.n).map(|k| format!("d{k}")));
        v.push("s".into());
        if self.quadratized {
            v.extend(["y12", "y22"].map(String::from));
        }
        if self.with_z {
            v.extend(["z1", "z2"].map(String::from));
        }
        v
    }
}

/// Positions for the cubic variant: `x1..x2n, gamma, Delta, y1, y2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubicLayout {
    pub n: usize,
}

impl CubicLayout {
    pub fn gamma(&self) -> usize {
        2 * self.n
    }
    pub fn delta(&self) -> usize {
        2 * self.n + 1
    }
    pub fn y1(&self) -> usize {
        2 * self.n + 2
    }
    pub fn y2(&self) -> usize {
        2 * self.n + 3
    }
    pub fn num_vars(&self) -> usize {
        2 * self.n + 4
    }
    pub fn names(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..=2 * self.n).map(|j| format!("x{j}")).collect();
        v.extend(["gamma", "Delta", "y1", "y2"].map(String::from));
        v
    }
}

/// Positions for the cone instance: `x1..x2n, gamma, Delta, y1, y2, y3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnboundedLayout {
    pub n: usize,
}

impl UnboundedLayout {
    pub fn gamma(&self) -> usize {
        2 * self.n
    }
    pub fn delta(&self) -> usize {
        2 * self.n + 1
    }
    pub fn y(&self, i: usize) -> usize {
        2 * self.n + 2 + i
    }
    pub fn num_vars(&self) -> usize {
        2 * self.n + 5
    }
    pub fn names(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..=2 * self.n).map(|j| format!("x{j}")).collect();
        v.extend(["gamma", "Delta", "y1", "y2", "y3"].map(String::from));
        v
    }
}

/// A system together with an objective to maximize.
#[derive(Debug, Clone, PartialEq)]
pub struct OptProblem {
    pub system: PolySystem,
    pub objective: Polynomial,
}

struct Vars(usize);

impl Vars {
    fn v(&self, i: usize) -> Polynomial {
        Polynomial::var(self.0, i)
    }
    fn c(&self, q: BigRational) -> Polynomial {
        Polynomial::constant(self.0, q)
    }
    fn ci(&self, v: i64) -> Polynomial {
        self.c(int(v))
    }
}

/// Position of the variable tied to a DIMACS literal.
fn literal_var(n: usize, lit: i32) -> usize {
    let j = lit.unsigned_abs() as usize - 1;
    if lit > 0 { j } else { n + j }
}

fn check_n(cnf: &CnfFormula) -> Result<usize> {
    let n = cnf.num_vars;
    if n < 1 {
        return Err(Error::Precondition("formula needs at least one variable".into()));
    }
    if n < 3 {
        log::warn!("hardness arguments assume n >= 3; generating for n = {n}");
    }
    Ok(n)
}

/// Box, pairing, clause, gamma/Delta and `y in R_gamma` constraints shared by
/// the quadratic and cubic systems. `x` occupies positions `0..2n`.
fn add_linear_core(sys: &mut PolySystem, cnf: &CnfFormula, vs: &Vars, gamma: usize, delta: usize, y1: usize, y2: usize) {
    let n = cnf.num_vars;
    for j in 0..2 * n {
        sys.add_le(vs.v(j) - vs.ci(1), &format!("box[{}]", j + 1));
        sys.add_le(-vs.v(j) - vs.ci(1), &format!("box[{}]", j + 1));
    }
    for j in 0..n {
        sys.add_eq(vs.v(j) + vs.v(n + j), &format!("pair[{}]", j + 1));
    }
    for (i, c) in cnf.clauses.iter().enumerate() {
        let sum = c.iter().fold(vs.ci(0), |acc, &l| acc + vs.v(literal_var(n, l)));
        // x_a + x_b + x_c >= -1 - Delta
        sys.add_le(-sum - vs.ci(1) - vs.v(delta), &format!("join[{}]", i + 1));
    }
    sys.add_le(-vs.v(gamma), "gammadelta");
    sys.add_le(-vs.v(delta), "gammadelta");
    sys.add_le(vs.v(delta) - vs.ci(2), "gammadelta");
    sys.add_le(vs.v(delta) + vs.v(gamma).scale(&rat(1, 2)) - vs.ci(2), "gammadelta");
    let [y1lo, y1hi, y2lo, y2hi] = R_GAMMA_BOUNDS.map(|(p, q)| rat(p, q));
    sys.add_le(vs.c(y1lo) - vs.v(gamma) - vs.v(y1), "R_gamma");
    sys.add_le(vs.v(y1) - vs.c(y1hi), "R_gamma");
    sys.add_le(vs.c(y2lo) - vs.v(y2), "R_gamma");
    sys.add_le(vs.v(y2) - vs.c(y2hi), "R_gamma");
}

fn pow_i(n: usize, e: u32) -> BigRational {
    BigRational::from_integer(num_traits::pow(BigInt::from(n), e as usize))
}

/// `-n^5 * sum_{j<=n} x_j^2 + n^6`, the part of the nasty constraint that does not involve `y`.
fn x_penalty(vs: &Vars, n: usize) -> Polynomial {
    let mut p = vs.c(pow_i(n, 6));
    for j in 0..n {
        let mut e = vec![0; vs.0];
        e[j] = 2;
        p.add_term(Monomial(e), -pow_i(n, 5));
    }
    p
}

/// The quadratic system whose rational solutions are short exactly when the
/// formula is satisfiable. With `quadratize`, the cubic constraint is lifted
/// through `y12 = y1^2` and `y22 = y2^2`, so every constraint has degree at most 2.
pub fn build_np_hard_system(cnf: &CnfFormula, quadratize: bool) -> Result<PolySystem> {
    build_np_hard_with(cnf, NpLayout::new(check_n(cnf)?, quadratize))
}

fn build_np_hard_with(cnf: &CnfFormula, lay: NpLayout) -> Result<PolySystem> {
    let n = lay.n;
    let vs = Vars(lay.num_vars());
    let mut sys = PolySystem::new(lay.names());
    add_linear_core(&mut sys, cnf, &vs, lay.gamma(), lay.delta(), lay.y1(), lay.y2());

    sys.add_le(-vs.v(lay.d(0)), "tiny");
    sys.add_le(vs.v(lay.d(0)) - vs.c(rat(1, 2)), "tiny");
    for k in 1..n {
        sys.add_le(-vs.v(lay.d(k)), "tiny");
        sys.add_le(vs.v(lay.d(k)) - vs.v(lay.d(k - 1)).pow(2), "tiny");
    }
    sys.add_le(-vs.v(lay.s()), "tiny");
    sys.add_le(vs.v(lay.s()) - vs.v(lay.d(n - 1)).pow(2), "tiny");

    let (y1, y2) = (vs.v(lay.y1()), vs.v(lay.y2()));
    let h = match (lay.y12(), lay.y22()) {
        (Some(a), Some(b)) => {
            let (y12, y22) = (vs.v(a), vs.v(b));
            sys.add_eq(y12.clone() - y1.pow(2), "lift");
            sys.add_eq(y22.clone() - y2.pow(2), "lift");
            (y12 * y1.clone()).scale(&int(2)) + y22 * y2.clone() - (y1 * y2).scale(&int(6)) + vs.ci(4)
        }
        _ => h_polynomial(vs.0, lay.y1(), lay.y2()),
    };
    sys.add_le(x_penalty(&vs, n) + h - vs.v(lay.s()), "nasty");
    Ok(sys)
}

/// Linear constraints plus the single cubic `-n^5 sum x_j^2 + h(y) <= -n^6`.
pub fn build_cubic_system(cnf: &CnfFormula) -> Result<PolySystem> {
    let lay = CubicLayout { n: check_n(cnf)? };
    let vs = Vars(lay.num_vars());
    let mut sys = PolySystem::new(lay.names());
    add_linear_core(&mut sys, cnf, &vs, lay.gamma(), lay.delta(), lay.y1(), lay.y2());
    sys.add_le(x_penalty(&vs, lay.n) + h_polynomial(vs.0, lay.y1(), lay.y2()), "nasty");
    Ok(sys)
}

/// The main system plus the `z`-gadget driven by `s`; objective `z2` (maximize).
pub fn build_superopt_problem(cnf: &CnfFormula) -> Result<OptProblem> {
    let lay = NpLayout { n: check_n(cnf)?, quadratized: false, with_z: true };
    let mut sys = build_np_hard_with(cnf, lay)?;
    let vs = Vars(lay.num_vars());
    let (z1, z2) = (vs.v(lay.z1().unwrap()), vs.v(lay.z2().unwrap()));
    let s = vs.v(lay.s());
    sys.add_le(vs.ci(5) + s - (z1.clone() - vs.ci(1)).pow(2) - z2.pow(2), "O1");
    sys.add_le(vs.ci(5) - (z1.clone() + vs.ci(1)).pow(2) - z2.pow(2), "O2");
    sys.add_le(z1.pow(2).scale(&rat(1, 10)) + z2.pow(2) - vs.ci(4), "E");
    sys.add_le(-z2.clone(), "z2>=0");
    Ok(OptProblem { system: sys, objective: z2 })
}

/// `c(y) = -2 y1^3 - y2^3 + 6 y1 y2 y3 - 4 y3^3` on `n` variables at the given positions.
pub fn c_polynomial(n: usize, y1: usize, y2: usize, y3: usize) -> Polynomial {
    let vs = Vars(n);
    let (a, b, c) = (vs.v(y1), vs.v(y2), vs.v(y3));
    (a.pow(3).scale(&int(-2))) - b.pow(3) + (a * b * c.clone()).scale(&int(6)) - c.pow(3).scale(&int(4))
}

/// The homogeneous cone `K` and the cubic objective
/// `pi = -n^6 y3^3 + n^5 y3 sum_{j<=n} x_j^2 + c(y)`.
pub fn build_unbounded_instance(cnf: &CnfFormula) -> Result<OptProblem> {
    let n = check_n(cnf)?;
    let lay = UnboundedLayout { n };
    let vs = Vars(lay.num_vars());
    let y3 = vs.v(lay.y(2));
    let (gamma, delta) = (vs.v(lay.gamma()), vs.v(lay.delta()));
    let mut sys = PolySystem::new(lay.names());
    for j in 0..2 * n {
        sys.add_le(-y3.clone() - vs.v(j), &format!("box[{}]", j + 1));
        sys.add_le(vs.v(j) - y3.clone(), &format!("box[{}]", j + 1));
    }
    for j in 0..n {
        sys.add_eq(vs.v(j) + vs.v(n + j), &format!("pair[{}]", j + 1));
    }
    sys.add_le(-y3.clone(), "y3>=0");
    for (i, c) in cnf.clauses.iter().enumerate() {
        let sum = c.iter().fold(vs.ci(0), |acc, &l| acc + vs.v(literal_var(n, l)));
        sys.add_le(-sum - y3.clone() - delta.clone(), &format!("join[{}]", i + 1));
    }
    sys.add_le(-gamma.clone(), "gammadelta");
    sys.add_le(-delta.clone(), "gammadelta");
    sys.add_le(delta.clone() - y3.scale(&int(2)), "gammadelta");
    sys.add_le(delta + gamma.scale(&rat(1, 2)) - y3.scale(&int(2)), "gammadelta");
    let [y1lo, y1hi, y2lo, y2hi] = R_GAMMA_BOUNDS.map(|(p, q)| rat(p, q));
    let (y1, y2) = (vs.v(lay.y(0)), vs.v(lay.y(1)));
    sys.add_le(y3.scale(&y1lo) - gamma - y1.clone(), "R_gamma");
    sys.add_le(y1 - y3.scale(&y1hi), "R_gamma");
    sys.add_le(y3.scale(&y2lo) - y2.clone(), "R_gamma");
    sys.add_le(y2 - y3.scale(&y2hi), "R_gamma");

    let mut sq = vs.ci(0);
    for j in 0..n {
        sq = sq + vs.v(j).pow(2);
    }
    let objective = y3.pow(3).scale(&-pow_i(n, 6)) + (y3 * sq).scale(&pow_i(n, 5))
        + c_polynomial(vs.0, lay.y(0), lay.y(1), lay.y(2));
    Ok(OptProblem { system: sys, objective })
}
