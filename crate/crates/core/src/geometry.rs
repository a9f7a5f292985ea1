//! Instrument geometry and the mechanical-noise description.

use crate::{Error, Real, Result};

/// Placement of the three gratings and the inertial environment.
///
/// Angles follow the grating conventions: roll rotates about the particle
/// beam axis, pitch about the laser axis, yaw about the vertical.
/// `common_roll_gravity` is the roll of the whole grating assembly relative
/// to gravity, which couples the fringe phase to falls during transit.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferometerGeometry<T> {
    /// Grating separation L in m.
    pub separation: T,
    /// Deviation of the two separations from equality, in m.
    pub separation_error: T,
    /// Relative roll misalignment between gratings, in rad.
    pub roll: T,
    /// Relative pitch misalignment between gratings, in rad.
    pub pitch: T,
    /// Relative yaw misalignment between gratings, in rad.
    pub yaw: T,
    /// Roll of the grating assembly against gravity, in rad.
    pub common_roll_gravity: T,
    /// Geographic latitude in rad.
    pub latitude: T,
    /// Local gravitational acceleration in m/s^2.
    pub gravity: T,
    /// Planet rotation rate in rad/s.
    pub earth_rotation: T,
}

impl<T: Real> InterferometerGeometry<T> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        separation: T,
        separation_error: T,
        roll: T,
        pitch: T,
        yaw: T,
        common_roll_gravity: T,
        latitude: T,
        gravity: T,
        earth_rotation: T,
    ) -> Result<Self> {
        if !(separation > T::zero()) {
            return Err(Error::input(format!(
                "grating separation must be positive, got {separation}"
            )));
        }
        if !(separation_error >= T::zero()) {
            return Err(Error::input("separation error must be non-negative"));
        }
        let half_pi = T::FRAC_PI_2();
        for (name, angle) in [
            ("roll", roll),
            ("pitch", pitch),
            ("yaw", yaw),
            ("common roll", common_roll_gravity),
            ("latitude", latitude),
        ] {
            if !(angle.abs() < half_pi) {
                return Err(Error::input(format!(
                    "{name} angle {angle} outside (-pi/2, pi/2)"
                )));
            }
        }
        if !(gravity > T::zero()) {
            return Err(Error::input("gravity must be positive"));
        }
        if !(earth_rotation >= T::zero()) {
            return Err(Error::input("rotation rate must be non-negative"));
        }
        Ok(InterferometerGeometry {
            separation,
            separation_error,
            roll,
            pitch,
            yaw,
            common_roll_gravity,
            latitude,
            gravity,
            earth_rotation,
        })
    }

    /// Rotation-rate component perpendicular to the interferometer plane,
    /// `Omega_E * sin(latitude)`.
    pub fn rotation_perpendicular(&self) -> T {
        self.earth_rotation * self.latitude.sin()
    }
}

/// Mechanical vibration amplitudes of the grating mirrors.
///
/// `amplitude_g1..g3` are uncorrelated sinusoidal position amplitudes of the
/// individual gratings along the grating axis; `common_amplitude` and
/// `common_omega` describe one coherent mode moving all three together.
#[derive(Debug, Clone, PartialEq)]
pub struct VibrationSpec<T> {
    /// Independent amplitude of grating 1 in m.
    pub amplitude_g1: T,
    /// Independent amplitude of grating 2 in m.
    pub amplitude_g2: T,
    /// Independent amplitude of grating 3 in m.
    pub amplitude_g3: T,
    /// Common-mode amplitude in m.
    pub common_amplitude: T,
    /// Common-mode angular frequency in rad/s.
    pub common_omega: T,
}

impl<T: Real> VibrationSpec<T> {
    pub fn new(
        amplitude_g1: T,
        amplitude_g2: T,
        amplitude_g3: T,
        common_amplitude: T,
        common_omega: T,
    ) -> Result<Self> {
        for (name, value) in [
            ("grating 1 amplitude", amplitude_g1),
            ("grating 2 amplitude", amplitude_g2),
            ("grating 3 amplitude", amplitude_g3),
            ("common amplitude", common_amplitude),
            ("common frequency", common_omega),
        ] {
            if !(value >= T::zero()) {
                return Err(Error::input(format!("{name} must be non-negative, got {value}")));
            }
        }
        Ok(VibrationSpec {
            amplitude_g1,
            amplitude_g2,
            amplitude_g3,
            common_amplitude,
            common_omega,
        })
    }

    /// A quiet instrument: no vibrations at all.
    pub fn quiet() -> Self {
        VibrationSpec {
            amplitude_g1: T::zero(),
            amplitude_g2: T::zero(),
            amplitude_g3: T::zero(),
            common_amplitude: T::zero(),
            common_omega: T::zero(),
        }
    }
}
