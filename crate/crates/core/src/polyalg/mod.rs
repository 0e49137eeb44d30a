//! Sparse multivariate and dense univariate polynomials over any [`Scalar`].
//!
//! [`Scalar`]: crate::Scalar

mod monomial;
mod multi;
mod text;
mod uni;

pub use monomial::Monomial;
pub use multi::{MultiPoly, PolyJson, TermJson};
pub use text::{default_var_names, format_polynomial, parse_polynomial};
pub use uni::{RootInterval, Univariate};
