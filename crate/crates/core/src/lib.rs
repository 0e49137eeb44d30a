//! Exact rational machinery for polynomial feasibility systems.
//!
//! The crate covers four families of tools:
//!
//! * exact scalars ([`ratcore`]): big rationals, encoding sizes, rational square
//!   roots, and arithmetic in `Q[t]/(t^e - k)` for `e` in {2, 3};
//! * sparse polynomials over any [`Scalar`] ([`polyalg`]) and inequality
//!   systems built from them ([`systems`]);
//! * generators for the 3SAT-based hardness instances and the small example
//!   systems with their witnesses ([`reductions`], [`gadgets`]);
//! * constructive procedures: explicit bounds ([`bounds`]), grid certificates
//!   ([`certify`]), rational points for separable cubics ([`separable`]) and
//!   ray classification ([`rays`]).
//!
//! Every verdict is computed in exact arithmetic. Floating point only appears
//! through the `f32`/`f64` instances of [`Scalar`], which exist for sanity checks.

pub mod bounds;
pub mod certify;
pub mod config;
pub mod error;
pub mod gadgets;
pub mod linalg;
pub mod polyalg;
pub mod ratcore;
pub mod rays;
pub mod reductions;
pub mod scalar;
pub mod separable;
pub mod systems;

pub use error::{Error, Result};
pub use ratcore::{AlgebraicElement, Extension};
pub use scalar::{ExactSign, Scalar};

/// Arbitrary-precision exact rational, the default scalar everywhere.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;

/// Sparse multivariate polynomial with exact rational coefficients.
pub type Polynomial = polyalg::MultiPoly<Rational>;
/// Sparse multivariate polynomial over an algebraic extension.
pub type PolynomialAlg = polyalg::MultiPoly<AlgebraicElement>;
/// Floating-point polynomial, for sanity layers only.
pub type PolynomialF64 = polyalg::MultiPoly<f64>;
/// Dense univariate polynomial with rational coefficients.
pub type UniPoly = polyalg::Univariate<Rational>;
/// Dense univariate polynomial with coefficients in `Q[t]/(t^e - k)`.
pub type UniPolyAlg = polyalg::Univariate<AlgebraicElement>;
/// Univariate polynomial in floating point.
pub type UniPolyF64 = polyalg::Univariate<f64>;

pub use polyalg::{Monomial, MultiPoly, Univariate};
pub use systems::{Constraint, PolySystem, Relation, Tag, Verdict};
