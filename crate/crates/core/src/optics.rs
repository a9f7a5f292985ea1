//! Grating-laser optics: Gaussian beam propagation and the retro-reflected
//! standing wave that forms each photodepletion grating.

use crate::constants;
use crate::math::bisect;
use crate::{Error, Real, Result};

/// Laser forming one standing-wave grating by retro-reflection off a common
/// fold mirror.
///
/// The beam is an elliptical Gaussian focused onto the mirror surface with
/// waist `waist_x` along the particle-beam axis and `waist_y` vertically.
/// The grating period is `wavelength / 2` along the mirror normal.
#[derive(Debug, Clone, PartialEq)]
pub struct GratingLaser<T> {
    /// Vacuum wavelength in m.
    pub wavelength: T,
    /// FWHM frequency linewidth in Hz.
    pub linewidth: T,
    /// Optical frequency c / wavelength in Hz.
    pub base_frequency: T,
    /// Beam power in W.
    pub power: T,
    /// Relative shot-to-shot intensity instability (Delta I / I).
    pub power_instability: T,
    /// Focal waist along the particle-beam axis in m.
    pub waist_x: T,
    /// Vertical focal waist in m.
    pub waist_y: T,
    /// Distance from the mirror surface at which the particle beam crosses
    /// the standing wave, in m.
    pub pass_distance: T,
    /// Peak deviation of the mirror surface from flat, in m (0 = ideal).
    pub mirror_flatness: T,
}

impl<T: Real> GratingLaser<T> {
    pub fn new(
        wavelength: T,
        linewidth: T,
        power: T,
        power_instability: T,
        waist_x: T,
        waist_y: T,
        pass_distance: T,
    ) -> Result<Self> {
        if !(wavelength > T::zero()) {
            return Err(Error::input(format!(
                "wavelength must be positive, got {wavelength}"
            )));
        }
        if !(linewidth >= T::zero()) || !(power >= T::zero()) || !(power_instability >= T::zero())
        {
            return Err(Error::input(
                "linewidth, power and instability must be non-negative",
            ));
        }
        if !(waist_x > T::zero()) || !(waist_y > T::zero()) {
            return Err(Error::input("waists must be positive"));
        }
        if !(pass_distance > T::zero()) {
            return Err(Error::input(format!(
                "pass distance must be positive, got {pass_distance}"
            )));
        }
        Ok(GratingLaser {
            wavelength,
            linewidth,
            base_frequency: T::of(constants::SPEED_OF_LIGHT) / wavelength,
            power,
            power_instability,
            waist_x,
            waist_y,
            pass_distance,
            mirror_flatness: T::zero(),
        })
    }

    /// Grating period d = wavelength / 2.
    pub fn period(&self) -> T {
        self.wavelength / T::of(2.0)
    }

    /// Rayleigh length of the x-waist, the conservative pass-distance bound.
    pub fn rayleigh_length_x(&self) -> T {
        rayleigh_length(self.waist_x, self.wavelength).expect("validated at construction")
    }
}

/// Rayleigh length `pi w0^2 / lambda`.
pub fn rayleigh_length<T: Real>(waist: T, wavelength: T) -> Result<T> {
    if !(waist > T::zero()) || !(wavelength > T::zero()) {
        return Err(Error::domain(
            "Rayleigh length needs positive waist and wavelength",
        ));
    }
    Ok(T::PI() * waist * waist / wavelength)
}

/// Transverse state of a focused Gaussian beam at distance `z` from the waist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianBeamState<T> {
    /// Distance from the focus in m.
    pub z: T,
    /// 1/e^2 radius w(z) in m.
    pub width: T,
    /// Wavefront curvature radius R(z) in m; +infinity at the focus.
    pub curvature_radius: T,
    /// Gouy phase arctan(z / z_R) in rad.
    pub gouy_phase: T,
}

/// Gaussian beam propagation from a waist `w0` at z = 0.
pub fn gaussian_state_at<T: Real>(waist: T, wavelength: T, z: T) -> Result<GaussianBeamState<T>> {
    let z_r = rayleigh_length(waist, wavelength)?;
    let u = z / z_r;
    let width = waist * (T::one() + u * u).sqrt();
    let curvature_radius = if z == T::zero() {
        T::infinity()
    } else {
        z * (T::one() + (z_r / z) * (z_r / z))
    };
    Ok(GaussianBeamState {
        z,
        width,
        curvature_radius,
        gouy_phase: u.atan(),
    })
}

/// Normalized intensity of the retro-reflected standing wave.
///
/// `x` runs along the particle-beam axis (transverse to the laser), `z` is
/// the distance from the mirror surface along the laser axis. The field is
/// the superposition of the incident beam and its reflection off a lossless
/// mirror at z = 0 with a pi phase jump, so the mirror surface is an exact
/// node plane. Wavefront curvature and Gouy phase of both transverse waists
/// are kept; normalization puts the limiting on-axis antinode amplitude next
/// to the mirror at 1.
pub fn standing_wave_intensity<T: Real>(laser: &GratingLaser<T>, x: T, z: T) -> Result<T> {
    if !(z >= T::zero()) {
        return Err(Error::domain(format!(
            "intensity is defined in front of the mirror only, got z = {z}"
        )));
    }
    let two = T::of(2.0);
    let k = two * T::PI() / laser.wavelength;
    let zr_x = laser.rayleigh_length_x();
    let zr_y = rayleigh_length(laser.waist_y, laser.wavelength)?;

    let wx = laser.waist_x * (T::one() + (z / zr_x) * (z / zr_x)).sqrt();
    let wy = laser.waist_y * (T::one() + (z / zr_y) * (z / zr_y)).sqrt();
    // 1/R(z) written to stay finite at the focus
    let inv_rx = z / (z * z + zr_x * zr_x);
    let gouy = ((z / zr_x).atan() + (z / zr_y).atan()) / two;

    let phase = k * z + k * x * x * inv_rx / two - gouy;
    let envelope =
        (laser.waist_x / wx) * (laser.waist_y / wy) * (-two * x * x / (wx * wx)).exp();
    Ok(envelope * phase.sin() * phase.sin())
}

/// Largest distances from the mirror at which the standing wave still acts
/// as a clean grating.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassDistanceBound<T> {
    /// Root of `w(z) tan(asin(w(z)/R(z))) = d`: beyond this the node-plane
    /// shear across the beam reaches a full grating period.
    pub exact: T,
    /// The Rayleigh length of the x-waist, the conservative design bound.
    pub conservative: T,
}

/// Solves the wavefront-shear criterion for the grating laser.
///
/// The left side `w(z) tan(asin(w(z)/R(z)))` grows monotonically with z,
/// so a bracketing bisection from the small-angle estimate
/// `z = z_R * pi * d / lambda` always converges.
pub fn wavefront_max_pass_distance<T: Real>(
    laser: &GratingLaser<T>,
) -> Result<PassDistanceBound<T>> {
    let d = laser.period();
    let z_r = laser.rayleigh_length_x();
    let w0 = laser.waist_x;
    let lhs = |z: T| {
        let w = w0 * (T::one() + (z / z_r) * (z / z_r)).sqrt();
        let r = z * (T::one() + (z_r / z) * (z_r / z));
        let q = w / r;
        w * q.asin().tan()
    };
    // paraxial sanity: the shear angle stays below 90 degrees
    if !(w0 * T::PI() > laser.wavelength) {
        return Err(Error::domain(
            "waist too small for the paraxial wavefront criterion",
        ));
    }
    let small_angle = z_r * T::PI() * d / laser.wavelength;
    let mut hi = small_angle * T::of(2.0);
    for _ in 0..60 {
        if lhs(hi) > d {
            break;
        }
        hi = hi * T::of(2.0);
    }
    let exact = bisect(|z| lhs(z) - d, small_angle * T::of(1e-6), hi)?;
    Ok(PassDistanceBound {
        exact,
        conservative: z_r,
    })
}
