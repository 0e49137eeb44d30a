//! Explicit numeric bounds: Lipschitz constants on boxes, the polytope box
//! bound, the epsilon/delta separation bounds and Cauchy root bounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratcore::{ceil_to_int, AlgebraicElement, Extension};
use crate::UniPoly;

/// `n * d * H * M^(d-1) * (n+d)^(d-1)`, a Lipschitz constant in the sup norm for
/// any polynomial of degree at most `d` with coefficients bounded by `H` on `[-M, M]^n`.
pub fn lipschitz_constant(n: u32, d: u32, h: &BigInt, m: &BigInt) -> BigInt {
    assert!(n >= 1 && d >= 1, "lipschitz_constant needs n, d >= 1");
    let e = (d - 1) as usize;
    BigInt::from(n) * BigInt::from(d) * h * num_traits::pow(m.clone(), e) * num_traits::pow(BigInt::from(n + d), e)
}

/// `(nH)^n`: every bounded polytope with integer data of height `H` lies in `[-M, M]^n`.
pub fn box_bound(n: u32, h: &BigInt) -> BigInt {
    num_traits::pow(BigInt::from(n) * h, n as usize)
}

fn check_delta_args(n: u32, m: u32, d: u32, h: &BigInt) -> Result<()> {
    if n < 2 {
        return Err(Error::Precondition(format!("delta bound needs n >= 2, got {n}")));
    }
    if m < 1 {
        return Err(Error::Precondition("delta bound needs m >= 1".into()));
    }
    if d < 2 || d % 2 == 1 {
        return Err(Error::Precondition(format!("degree bound must be an even integer >= 2, got {d}")));
    }
    if !h.is_positive() {
        return Err(Error::Precondition("height must be positive".into()));
    }
    Ok(())
}

/// `n * 2^n * d^n`, the exponent in the epsilon/delta formulas.
pub fn separation_exponent(n: u32, d: u32) -> BigInt {
    BigInt::from(n) * (BigInt::one() << n) * num_traits::pow(BigInt::from(d), n as usize)
}

/// `max{H, 2n + 2m} * d^n`, the integer part of the base.
fn base_integer(n: u32, m: u32, d: u32, h: &BigInt) -> BigInt {
    let k = BigInt::from(2 * n + 2 * m);
    let mx = if h > &k { h.clone() } else { k };
    mx * num_traits::pow(BigInt::from(d), n as usize)
}

/// The base `2^(4 - n/2) * max{H, 2n+2m} * d^n`, exact in `Q(sqrt 2)` when `n` is odd.
fn exact_base(n: u32, m: u32, d: u32, h: &BigInt) -> AlgebraicElement {
    let k = BigRational::from_integer(base_integer(n, m, d, h));
    let half_exp = 8 - n as i64; // 2^(4 - n/2) = 2^(half_exp / 2)
    if half_exp % 2 == 0 {
        AlgebraicElement::rational(k * crate::ratcore::pow2(half_exp / 2))
    } else {
        // 2^(half_exp/2) = 2^((half_exp-1)/2) * sqrt 2
        let s2 = Extension::sqrt(2).expect("2 is not a square");
        let c = k * crate::ratcore::pow2((half_exp - 1).div_euclid(2));
        AlgebraicElement::new(&s2, vec![BigRational::zero(), c]).expect("two coefficients")
    }
}

fn exponent_u64(n: u32, d: u32) -> Result<u64> {
    separation_exponent(n, d)
        .to_u64()
        .ok_or_else(|| Error::Precondition("separation exponent does not fit in 64 bits".into()))
}

/// `ceil(1 / epsilon(n, m, d, H)) = ceil((2^(4-n/2) max{H, 2n+2m} d^n)^(n 2^n d^n))`.
pub fn epsilon_inverse(n: u32, m: u32, d: u32, h: &BigInt) -> Result<BigInt> {
    check_delta_args(n, m, d, h)?;
    Ok(exact_base(n, m, d, h).pow(exponent_u64(n, d)?).ceil())
}

/// `delta(n, m, d, H) = ceil(2 (2^(4-n/2) max{H, 2n+2m} d^n)^(n 2^n d^n))`, exactly.
///
/// The power is formed in `Q(sqrt 2)` and the ceiling taken by exact comparison,
/// so odd `n` needs no rounding.
pub fn delta_bound(n: u32, m: u32, d: u32, h: &BigInt) -> Result<BigInt> {
    check_delta_args(n, m, d, h)?;
    let v = exact_base(n, m, d, h).pow(exponent_u64(n, d)?);
    Ok(v.scale(&BigRational::from_integer(2.into())).ceil())
}

/// Over-approximation of [`delta_bound`] that rounds `2^(4-n/2)` up to
/// `2^ceil(4-n/2)`. Any larger delta keeps the relaxation sound.
pub fn delta_bound_loose(n: u32, m: u32, d: u32, h: &BigInt) -> Result<BigInt> {
    check_delta_args(n, m, d, h)?;
    let e2 = 4 - (n as i64) / 2; // ceil(4 - n/2) for integer n
    let base = BigRational::from_integer(base_integer(n, m, d, h)) * crate::ratcore::pow2(e2);
    let v = num_traits::pow(base, exponent_u64(n, d)? as usize) * BigRational::from_integer(2.into());
    Ok(ceil_to_int(&v))
}

/// Approximate `log2 delta(n, m, d, H)`, for guarding against values too large to build.
pub fn delta_bits_estimate(n: u32, m: u32, d: u32, h: &BigInt) -> f64 {
    let k = base_integer(n, m, d, h);
    let log_k = k.to_f64().map_or(k.bits() as f64, f64::log2);
    let e = separation_exponent(n, d).to_f64().unwrap_or(f64::INFINITY);
    1.0 + e * (4.0 - n as f64 / 2.0 + log_k)
}

/// Cauchy bounds for a univariate polynomial with nonzero leading and constant
/// coefficients: every real root satisfies `1/delta <= |x| <= M`.
pub fn cauchy_bounds(p: &UniPoly) -> Result<(BigRational, BigRational)> {
    let n = p.degree().ok_or_else(|| Error::Precondition("zero polynomial".into()))?;
    let c = p.coeffs();
    if c[0].is_zero() {
        return Err(Error::Precondition("constant coefficient is zero; deflate zero roots first".into()));
    }
    let an = c[n].abs();
    let a0 = c[0].abs();
    let mut m = BigRational::zero();
    for a in &c[..n] {
        m = m.max(a.abs() / &an);
    }
    let mut dl = BigRational::zero();
    for a in &c[1..] {
        dl = dl.max(a.abs() / &a0);
    }
    Ok((m + BigRational::one(), dl + BigRational::one()))
}

/// The bound bundle used by the certificate construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    #[serde(rename = "M", serialize_with = "ser_int")]
    pub m: BigInt,
    #[serde(rename = "L", serialize_with = "ser_int")]
    pub l: BigInt,
    #[serde(serialize_with = "ser_opt_int")]
    pub epsilon_inverse: Option<BigInt>,
    #[serde(serialize_with = "ser_opt_int")]
    pub delta: Option<BigInt>,
    #[serde(serialize_with = "ser_opt_int")]
    pub phi: Option<BigInt>,
    pub delta_bits: f64,
    pub phi_bits: Option<u64>,
    pub loose: bool,
}

fn ser_int<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_opt_int<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// Largest delta, in bits, that [`bound_report`] will materialize.
pub const MAX_MATERIALIZED_BITS: f64 = (1u64 << 24) as f64;

/// Builds `M`, `L`, epsilon, delta and `phi = ceil(L M l delta)` for `n`
/// variables, `m` linear and `ell` nonlinear constraints of degree `d` and height `H`.
/// Delta is computed with the certificate parameters `(n, m + l, 2d, l H^2)`.
/// Values whose estimated size exceeds [`MAX_MATERIALIZED_BITS`] are omitted.
pub fn bound_report(n: u32, m: u32, ell: u32, d: u32, h: &BigInt, loose: bool) -> Result<BoundReport> {
    let bm = box_bound(n, h);
    let l = lipschitz_constant(n, d.max(1), h, &bm);
    let (dn, dm, dd, dh) = (n, m + ell, 2 * d.max(1), BigInt::from(ell.max(1)) * h * h);
    let delta_bits = delta_bits_estimate(dn, dm, dd, &dh);
    let (eps, delta) = if delta_bits <= MAX_MATERIALIZED_BITS {
        let delta = if loose { delta_bound_loose(dn, dm, dd, &dh)? } else { delta_bound(dn, dm, dd, &dh)? };
        (Some(epsilon_inverse(dn, dm, dd, &dh)?), Some(delta))
    } else {
        (None, None)
    };
    let phi = delta.as_ref().map(|dl| &l * &bm * BigInt::from(ell.max(1)) * dl);
    let phi_bits = phi.as_ref().map(BigInt::bits);
    Ok(BoundReport { m: bm, l, epsilon_inverse: eps, delta, phi, delta_bits, phi_bits, loose })
}
