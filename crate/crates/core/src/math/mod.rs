//! Numerical helpers shared by the formula layer.

mod bessel;
mod solve;

pub use bessel::bessel_j0;
pub use solve::bisect;

use crate::Real;

/// Unnormalized sinc, `sin(x)/x`, with the removable singularity at 0
/// handled analytically.
///
/// Below `|x| ~ 1e-4` the two-term Taylor expansion `1 - x^2/6` is exact to
/// better than 1e-18 relative and avoids the 0/0 form.
pub fn sinc<T: Real>(x: T) -> T {
    if x.abs() < T::of(1e-4) {
        T::one() - x * x / T::of(6.0)
    } else {
        x.sin() / x
    }
}
