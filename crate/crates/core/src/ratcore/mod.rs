//! Exact scalars: rationals, encoding sizes, rational square roots and the
//! small radical extensions `Q[t]/(t^e - k)`.

mod algebraic;
mod rational;
mod surd;

pub use algebraic::{AlgebraicElement, AlgebraicJson, Extension};
pub use rational::{
    ceil_to_int, dyadic_ceil, dyadic_floor, dyadic_round, encoding_size, floor_to_int,
    format_rational, int, parse_rational, pow2, rat, rational_sqrt, vector_size, RatStr,
};
pub use surd::QuadSurdSum;
