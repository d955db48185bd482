//! Scalar abstraction shared by the geometric and optical code.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point type the geometry and optics layers are generic over.
///
/// Implemented for `f32` and `f64`. Currency never goes through this trait;
/// see [`crate::Money`].
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Default + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 literal")
    }

    /// Tolerance used for "on the boundary" decisions, relative to the
    /// magnitude of the coordinates involved.
    fn boundary_eps() -> Self;
}

impl Scalar for f32 {
    fn boundary_eps() -> Self {
        1e-5
    }
}

impl Scalar for f64 {
    fn boundary_eps() -> Self {
        1e-9
    }
}
