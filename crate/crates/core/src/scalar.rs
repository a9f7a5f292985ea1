use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the formula layer is generic over.
///
/// Implemented for `f32` and `f64`. Physical constants and polynomial
/// coefficients are stored as `f64` literals and narrowed through
/// [`Real::of`], so an `f32` instantiation carries ordinary single-precision
/// rounding but no other loss.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }
}

impl Real for f32 {}
impl Real for f64 {}
