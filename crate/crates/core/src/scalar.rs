//! Scalar bounds shared by the exact and the numerical halves of the crate.
//!
//! Exact code (slopes, Farey matrices, trace polynomials) is written against
//! [`IntScalar`], which `i64`, `i128` and `BigInt` all satisfy. Numerical code
//! (root finding, complex word matrices) is written against [`RealScalar`],
//! satisfied by `f32` and `f64`.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Float, FloatConst, FromPrimitive, One, Signed, ToPrimitive, Zero};

/// An exact signed integer type.
pub trait IntScalar:
    Integer + Signed + Clone + Hash + Debug + Display + FromStr + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Lossless conversion from a machine integer.
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("i64 fits in every IntScalar")
    }
}

impl<T> IntScalar for T where
    T: Integer + Signed + Clone + Hash + Debug + Display + FromStr + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// A floating-point type used for numerical certification.
pub trait RealScalar: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static {}

impl<T> RealScalar for T where T: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static {}

/// A commutative ring with unit; the entry type of [`crate::Mat2`].
pub trait Ring: Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {}

impl<T> Ring for T where T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T> {}
