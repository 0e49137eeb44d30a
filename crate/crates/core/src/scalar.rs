//! The scalar abstraction shared by the polynomial code.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative ring element that can absorb exact rational constants.
///
/// Implemented for [`BigRational`], [`crate::AlgebraicElement`], `f64` and `f32`.
/// Polynomial arithmetic, evaluation and ray restriction are written against
/// this trait only.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Embeds a rational constant.
    fn from_rational(q: &BigRational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(v.into()))
    }
}

/// Scalars whose sign can be decided exactly.
pub trait ExactSign {
    fn exact_sign(&self) -> Ordering;

    fn is_positive_exact(&self) -> bool {
        self.exact_sign() == Ordering::Greater
    }

    fn is_negative_exact(&self) -> bool {
        self.exact_sign() == Ordering::Less
    }
}

impl Scalar for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

impl ExactSign for BigRational {
    fn exact_sign(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl Scalar for f64 {
    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_rational(q: &BigRational) -> Self {
        q.to_f32().unwrap_or(f32::NAN)
    }
}
