//! Short feasibility certificates: a vertex of the grid cell containing a
//! feasible point, checked against the relaxed system, plus the
//! sum-of-squares aggregation of violated constraints.
//!
//! The grid over `[-M, M]^n` has `2 phi` cells per axis with
//! `phi = L M l delta`. It is never built: the cell containing a point is found
//! by one floor per coordinate, so the construction works for any `delta`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::bounds::{box_bound, lipschitz_constant};
use crate::error::{check_dim, Error, Result};
use crate::ratcore::{ceil_to_int, floor_to_int, format_rational, vector_size};
use crate::systems::Tag;
use crate::{PolySystem, Polynomial, Verdict};

/// Optional replacements for the box half-width `M` and Lipschitz constant `L`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GridParams {
    pub m: Option<BigInt>,
    pub l: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub point: Vec<BigRational>,
    pub delta_used: BigInt,
    pub m: BigInt,
    pub l: BigInt,
    pub phi: BigInt,
    /// Cell index: the cell is `prod_i [j_i M/phi, (j_i + 1) M/phi]`.
    pub box_index: Vec<BigInt>,
    pub size_bits: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub point: Vec<String>,
    pub delta_used: String,
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "L")]
    pub l: String,
    pub phi: String,
    pub box_index: Vec<String>,
    pub size_bits: u64,
}

impl Certificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            point: self.point.iter().map(format_rational).collect(),
            delta_used: self.delta_used.to_string(),
            m: self.m.to_string(),
            l: self.l.to_string(),
            phi: self.phi.to_string(),
            box_index: self.box_index.iter().map(|j| j.to_string()).collect(),
            size_bits: self.size_bits,
        }
    }
}

/// Largest integer height among the linear constraints, each cleared of denominators.
fn linear_height(sys: &PolySystem) -> BigInt {
    sys.constraints()
        .iter()
        .filter(|c| c.tag == Tag::Linear)
        .map(|c| c.poly.height_and_degree().0)
        .fold(BigInt::one(), |a, b| a.max(b))
}

/// `ceil(max |coefficient|)` over the nonlinear constraints, and their maximum degree.
fn nonlinear_height_degree(sys: &PolySystem) -> (BigInt, u32) {
    let mut h = BigInt::one();
    let mut d = 1;
    for c in sys.nonlinear() {
        for (_, coef) in c.poly.terms() {
            h = h.max(ceil_to_int(&coef.abs()));
        }
        d = d.max(c.poly.degree());
    }
    (h, d)
}

/// Builds a certificate for `R = P ∩ {g_j <= 0}` from a feasible point `x_tilde`.
///
/// `P` is the linear part of `system` and must be bounded. The returned point
/// is the lexicographically smallest vertex of `P ∩ cell(x_tilde)`.
pub fn grid_certificate(
    system: &PolySystem,
    delta: &BigInt,
    x_tilde: &[BigRational],
    params: &GridParams,
) -> Result<Certificate> {
    let n = system.num_vars();
    check_dim(n, x_tilde.len())?;
    if delta < &BigInt::one() {
        return Err(Error::Precondition("delta must be at least 1".into()));
    }
    if !system.verify(x_tilde)?.feasible {
        return Err(Error::Precondition("x_tilde is not feasible for the system".into()));
    }
    let poly = system.linear_polyhedron();
    if !poly.is_bounded() {
        return Err(Error::Unbounded("the linear part must describe a bounded polytope".into()));
    }
    let m = match &params.m {
        Some(m) => m.clone(),
        None => box_bound(n as u32, &linear_height(system)),
    };
    if !m.is_positive() {
        return Err(Error::Precondition("M must be positive".into()));
    }
    let mq = BigRational::from_integer(m.clone());
    if x_tilde.iter().any(|x| x.abs() > mq) {
        return Err(Error::Precondition("x_tilde lies outside [-M, M]^n".into()));
    }
    let (hg, d) = nonlinear_height_degree(system);
    let l = match &params.l {
        Some(l) => l.clone(),
        None => lipschitz_constant(n as u32, d, &hg, &m),
    };
    let ell = BigInt::from(system.num_nonlinear().max(1));
    let phi = (&l * &m * &ell * delta).max(BigInt::one());
    let phiq = BigRational::from_integer(phi.clone());

    let mut cell = poly.clone();
    let mut index = Vec::with_capacity(n);
    for (i, x) in x_tilde.iter().enumerate() {
        let j = floor_to_int(&(x * &phiq / &mq)).clamp(-phi.clone(), &phi - 1);
        let lo = BigRational::from_integer(j.clone()) * &mq / &phiq;
        let hi = BigRational::from_integer(&j + 1) * &mq / &phiq;
        cell.push_bounds(i, &lo, &hi);
        index.push(j);
    }
    let point = cell
        .vertices()
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("cell containing a feasible point has no vertex".into()))?;
    let size_bits = vector_size(&point);
    Ok(Certificate { point, delta_used: delta.clone(), m, l, phi, box_index: index, size_bits })
}

/// Verifies a candidate certificate against the relaxed system `l delta g_j <= 1`.
pub fn check_certificate(system: &PolySystem, delta: &BigInt, x_bar: &[BigRational]) -> Result<Verdict<BigRational>> {
    if delta < &BigInt::one() {
        return Err(Error::Precondition("delta must be at least 1".into()));
    }
    system.relax(delta).verify(x_bar)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SosCombination {
    /// Indices `j` with `g_j(x_bar) > 0`.
    pub active: Vec<usize>,
    /// `sum_{j in active} g_j^2`.
    pub g: Polynomial,
    pub degree: u32,
    /// Largest integer coefficient after clearing denominators.
    pub height: BigInt,
}

pub fn sos_combine(g_list: &[Polynomial], x_bar: &[BigRational]) -> Result<SosCombination> {
    let n = x_bar.len();
    let mut active = Vec::new();
    let mut g = Polynomial::zero(n);
    for (j, gj) in g_list.iter().enumerate() {
        check_dim(n, gj.num_vars())?;
        if gj.eval(x_bar)?.is_positive() {
            active.push(j);
            g = g + gj.pow(2);
        }
    }
    let (height, degree, _) = g.height_and_degree();
    Ok(SosCombination { active, degree, height, g })
}
