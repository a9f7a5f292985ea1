//! Particle-beam kinematics: the cluster beam and its matter-wave scales.

use crate::constants;
use crate::{Error, Real, Result};

/// Forward-directed beam of massive particles entering the interferometer.
///
/// Velocities are the mean forward speed and the 1-sigma spread of an
/// assumed Gaussian distribution. The transverse extent is the full height
/// `H` (vertical) and width `b` (along the standing-wave axis); `b` sets how
/// many grating periods are illuminated. Polarizability and absorption cross
/// section are only needed by the laser-interaction estimates and may be
/// absent.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterBeam<T> {
    /// Particle mass in kg.
    pub mass: T,
    /// Mean forward velocity in m/s.
    pub velocity_x: T,
    /// 1-sigma velocity spread in m/s.
    pub velocity_sigma: T,
    /// Beam height H in m.
    pub height: T,
    /// Beam width b in m, measured along the grating axis.
    pub width: T,
    /// Optical polarizability in SI units (C m^2 / V), if known.
    pub polarizability: Option<T>,
    /// Absorption cross section in m^2, if known.
    pub absorption_cross_section: Option<T>,
}

impl<T: Real> ClusterBeam<T> {
    pub fn new(
        mass: T,
        velocity_x: T,
        velocity_sigma: T,
        height: T,
        width: T,
    ) -> Result<Self> {
        if !(mass > T::zero()) {
            return Err(Error::input(format!("mass must be positive, got {mass}")));
        }
        if !(velocity_x > T::zero()) {
            return Err(Error::input(format!(
                "velocity must be positive, got {velocity_x}"
            )));
        }
        if !(velocity_sigma >= T::zero()) {
            return Err(Error::input(format!(
                "velocity spread must be non-negative, got {velocity_sigma}"
            )));
        }
        if velocity_sigma / velocity_x >= T::of(0.5) {
            return Err(Error::input(format!(
                "relative velocity spread {} exceeds the supported 0.5",
                velocity_sigma / velocity_x
            )));
        }
        if !(height > T::zero()) || !(width > T::zero()) {
            return Err(Error::input("beam height and width must be positive"));
        }
        Ok(ClusterBeam {
            mass,
            velocity_x,
            velocity_sigma,
            height,
            width,
            polarizability: None,
            absorption_cross_section: None,
        })
    }

    /// De Broglie wavelength of the mean-velocity particle.
    pub fn de_broglie_wavelength(&self) -> T {
        de_broglie_wavelength(self.mass, self.velocity_x).expect("validated at construction")
    }
}

/// De Broglie wavelength `h / (m v)` in m.
pub fn de_broglie_wavelength<T: Real>(mass: T, velocity: T) -> Result<T> {
    if !(mass > T::zero()) || !(velocity > T::zero()) {
        return Err(Error::domain(format!(
            "de Broglie wavelength needs positive mass and velocity, got m={mass}, v={velocity}"
        )));
    }
    Ok(T::of(constants::PLANCK) / (mass * velocity))
}

/// Talbot length `d^2 / lambda_dB`, the self-imaging distance of a grating
/// of period `d` for matter waves of wavelength `lambda_dB`.
pub fn talbot_length<T: Real>(period: T, de_broglie: T) -> Result<T> {
    if !(period > T::zero()) || !(de_broglie > T::zero()) {
        return Err(Error::domain(
            "Talbot length needs positive period and wavelength",
        ));
    }
    Ok(period * period / de_broglie)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::ATOMIC_MASS;
    use approx::assert_relative_eq;

    #[test]
    fn de_broglie_reference_particle() {
        // 1e5 atomic mass units at 100 m/s
        let lambda = de_broglie_wavelength(1e5 * ATOMIC_MASS, 100.0).unwrap();
        assert_relative_eq!(lambda, 3.990312714272398e-14, max_relative = 1e-12);
        // about 40 fm
        assert_relative_eq!(lambda, 4.0e-14, max_relative = 5e-3);
    }

    #[test]
    fn de_broglie_times_momentum_is_planck() {
        let m = 1e5 * ATOMIC_MASS;
        let v = 100.0;
        let lambda = de_broglie_wavelength(m, v).unwrap();
        assert_relative_eq!(
            lambda * m * v,
            crate::constants::PLANCK,
            max_relative = 1e-14
        );
    }

    #[test]
    fn talbot_length_reference() {
        let lambda = de_broglie_wavelength(1e5 * ATOMIC_MASS, 100.0).unwrap();
        let lt = talbot_length(133e-9, lambda).unwrap();
        assert_relative_eq!(lt, 0.4433, max_relative = 5e-4);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(de_broglie_wavelength(0.0, 100.0).is_err());
        assert!(de_broglie_wavelength(1e-25, -1.0).is_err());
        assert!(talbot_length(0.0, 1e-14).is_err());
    }

    #[test]
    fn beam_constructor_enforces_spread_bound() {
        assert!(ClusterBeam::new(1e-22, 100.0, 50.0, 1e-3, 1e-3).is_err());
        assert!(ClusterBeam::new(1e-22, 100.0, 49.0, 1e-3, 1e-3).is_ok());
        assert!(ClusterBeam::new(1e-22, 100.0, -1.0, 1e-3, 1e-3).is_err());
        assert!(ClusterBeam::new(-1e-22, 100.0, 0.0, 1e-3, 1e-3).is_err());
    }

    #[test]
    fn generic_f32_wavelength() {
        let lambda = de_broglie_wavelength(1.66053907e-22f32, 100.0f32).unwrap();
        assert_relative_eq!(lambda, 3.9903127e-14f32, max_relative = 1e-6);
    }
}
