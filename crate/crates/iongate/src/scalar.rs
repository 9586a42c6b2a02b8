//! Floating-point scalar abstraction for the numerical core.

use std::fmt;
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar type the whole simulator is generic over: f32 or f64.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + fmt::Debug
    + fmt::Display
    + fmt::LowerExp
    + Send
    + Sync
    + 'static
{
    /// Lossless-enough conversion from an f64 literal (physical constants,
    /// quadrature weights).
    fn from_f64c(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant conversion")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Complex number over the generic scalar.
pub type C<T> = Complex<T>;

/// i as a complex constant.
pub fn im<T: Scalar>() -> C<T> {
    C::new(T::zero(), T::one())
}

/// Real-valued complex constant.
pub fn cr<T: Scalar>(x: T) -> C<T> {
    C::new(x, T::zero())
}
