//! Static alignment criteria: hard limits the instrument must sit below.
//!
//! Each criterion compares a configured value against a limit derived from
//! the grating period. All limits are strict `<` comparisons; any rounding
//! for presentation happens in the display layer, never here.

use crate::beam::ClusterBeam;
use crate::optics::GratingLaser;
use crate::{Error, Real, Result};

/// Outcome of one strict upper-limit comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Check<T> {
    /// Configured value of the quantity under test.
    pub actual: T,
    /// Strict upper limit.
    pub limit: T,
    /// Remaining headroom, `limit - actual`.
    pub margin: T,
    /// `actual < limit`, strictly.
    pub pass: bool,
}

impl<T: Real> Check<T> {
    /// Evaluates `actual < limit`.
    pub fn strict_below(actual: T, limit: T) -> Self {
        Check {
            actual,
            limit,
            margin: limit - actual,
            pass: actual < limit,
        }
    }
}

/// Largest number of standing-wave periods that stay in phase over the beam
/// width, `nu / (10 * delta_nu)`: laser frequency jitter smears slit
/// positions once the illuminated width approaches this count.
///
/// A zero linewidth returns infinity (the count is unbounded).
pub fn max_slit_count<T: Real>(laser: &GratingLaser<T>) -> T {
    if laser.linewidth == T::zero() {
        return T::infinity();
    }
    laser.base_frequency / (T::of(10.0) * laser.linewidth)
}

/// Number of grating slits the particle beam actually illuminates,
/// `floor(width / period)`.
pub fn illuminated_slits<T: Real>(width: T, period: T) -> Result<T> {
    if !(width > T::zero()) || !(period > T::zero()) {
        return Err(Error::domain("slit count needs positive width and period"));
    }
    Ok((width / period).floor())
}

/// Shot-to-shot intensity stability criterion: the depletion-grating contrast
/// survives only if `Delta I / I < 0.1`.
pub fn intensity_stability_check<T: Real>(laser: &GratingLaser<T>) -> Check<T> {
    Check::strict_below(laser.power_instability, T::of(0.1))
}

/// Relative scale of the dipole phase a particle picks up in one grating,
/// `P * alpha / (v_x * w_y)` (proportionality constant 1).
///
/// Useful for comparing laser/beam configurations; requires the particle
/// polarizability.
pub fn grating_phase_scale<T: Real>(
    beam: &ClusterBeam<T>,
    laser: &GratingLaser<T>,
) -> Result<T> {
    let alpha = beam
        .polarizability
        .ok_or_else(|| Error::input("polarizability is required for the phase scale"))?;
    Ok(laser.power * alpha / (beam.velocity_x * laser.waist_y))
}

/// Yaw limit `arctan(d / 4 w_x) / 10`: at this incidence angle a particle
/// crossing the grating waist walks a quarter period along the grating axis,
/// and the factor 10 keeps the walk well below that.
pub fn yaw_limit<T: Real>(laser: &GratingLaser<T>) -> T {
    (laser.period() / (T::of(4.0) * laser.waist_x)).atan() / T::of(10.0)
}

/// Tolerance on the difference of the two grating separations,
/// `Delta L_max = L / N` for `N` illuminated slits.
pub fn separation_tolerance<T: Real>(slit_count: T, separation: T) -> Result<T> {
    if !(slit_count >= T::one()) {
        return Err(Error::domain(format!(
            "slit count must be at least 1, got {slit_count}"
        )));
    }
    if !(separation > T::zero()) {
        return Err(Error::domain("separation must be positive"));
    }
    Ok(separation / slit_count)
}

/// Pitch limit `Delta L_allowed / w_y`: pitching a grating by more than this
/// moves its effective position along the beam by more than the separation
/// tolerance across the illuminated height.
pub fn pitch_limit<T: Real>(laser: &GratingLaser<T>, allowed_separation_error: T) -> Result<T> {
    if !(allowed_separation_error > T::zero()) {
        return Err(Error::domain("separation tolerance must be positive"));
    }
    Ok(allowed_separation_error / laser.waist_y)
}

/// Mirror flatness limit, a tenth of the optical wavelength.
pub fn mirror_flatness_limit<T: Real>(wavelength: T) -> T {
    wavelength / T::of(10.0)
}

/// Checks a peak surface deviation against the lambda/10 limit.
pub fn mirror_flatness_check<T: Real>(deviation: T, wavelength: T) -> Check<T> {
    Check::strict_below(deviation, mirror_flatness_limit(wavelength))
}
