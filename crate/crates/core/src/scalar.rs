//! Scalar abstraction for every numeric quantity in the crate.
//!
//! All graph metrics, Hamiltonian coefficients, probabilities, and state
//! amplitudes (via [`num_complex::Complex<T>`]) are generic over a floating
//! point [`Scalar`]. `f64` is the default used by the pipeline and CLI; `f32`
//! exists for memory-constrained experiments and is exercised by the tests.

use std::fmt::{Debug, Display};
use std::iter::{Product, Sum};

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};
use rand::distributions::uniform::SampleUniform;

/// Floating-point scalar: `f32` or `f64`.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Product
    + SampleUniform
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Convert from `f64`, rounding if the target is narrower.
    fn from_f64_lossy(value: f64) -> Self {
        <Self as FromPrimitive>::from_f64(value).expect("finite f64 converts to any Scalar")
    }

    /// Widen to `f64`.
    fn to_f64_lossy(self) -> f64 {
        <Self as ToPrimitive>::to_f64(&self).expect("Scalar widens to f64")
    }

    /// Convert a count into the scalar type.
    fn from_usize_lossy(value: usize) -> Self {
        <Self as FromPrimitive>::from_usize(value).expect("usize converts to any Scalar")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
