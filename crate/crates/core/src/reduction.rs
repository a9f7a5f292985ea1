//! Visibility-reduction factors: multiplicative fringe-contrast losses from
//! misalignment, inertial forces and vibrations.
//!
//! Each factor is the modulus of the phase average `|<exp(i phi)>|` over the
//! relevant distribution, normalized so 1 means no loss. The factors for
//! roll, gravity and vibrations follow from closed-form averages; the
//! Coriolis velocity-spread factor is derived here by the same first-order
//! linearization that yields the gravity formula and is validated against
//! the Monte Carlo oracle.

use crate::beam::ClusterBeam;
use crate::geometry::{InterferometerGeometry, VibrationSpec};
use crate::math::{bessel_j0, bisect, sinc};
use crate::{Error, Real, Result};

/// The perturbation channel a reduction factor belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionEffect {
    /// Relative grating roll across the beam height.
    Roll,
    /// Gravitational phase spread over the velocity distribution.
    GravityRoll,
    /// Coriolis phase spread over the velocity distribution.
    CoriolisSpread,
    /// Uncorrelated grating vibrations.
    IndependentVibration,
    /// One coherent vibration mode moving all gratings.
    CommonVibration,
}

impl ReductionEffect {
    pub fn label(self) -> &'static str {
        match self {
            ReductionEffect::Roll => "roll",
            ReductionEffect::GravityRoll => "gravity roll",
            ReductionEffect::CoriolisSpread => "coriolis spread",
            ReductionEffect::IndependentVibration => "independent vibration",
            ReductionEffect::CommonVibration => "common-mode vibration",
        }
    }

    /// True for factors derived in this crate rather than taken from a
    /// closed-form average; these are validated against the MC oracle.
    pub fn is_derived(self) -> bool {
        matches!(self, ReductionEffect::CoriolisSpread)
    }
}

/// One named multiplicative visibility-reduction factor in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionFactor<T> {
    pub effect: ReductionEffect,
    pub value: T,
}

/// Roll reduction `|sinc(2 pi theta H / d)|`: a relative roll `theta`
/// shears the fringe phase linearly across the beam height `H`.
pub fn roll_reduction<T: Real>(theta: T, beam: &ClusterBeam<T>, period: T) -> T {
    let x = T::of(2.0) * T::PI() * theta * beam.height / period;
    sinc(x).abs()
}

/// Roll angle at which the fringes wash out completely, `d / (2H)`.
pub fn roll_first_zero<T: Real>(beam: &ClusterBeam<T>, period: T) -> T {
    period / (T::of(2.0) * beam.height)
}

/// Inverse of [`roll_reduction`]: the roll angle at which the reduction
/// falls to `target`, solved by bisection on the first sinc lobe.
pub fn roll_limit<T: Real>(target: T, beam: &ClusterBeam<T>, period: T) -> Result<T> {
    if !(target > T::zero() && target < T::one()) {
        return Err(Error::domain(format!(
            "roll reduction target must be in (0, 1), got {target}"
        )));
    }
    let x = bisect(|x| sinc(x) - target, T::zero(), T::PI())?;
    Ok(x * period / (T::of(2.0) * T::PI() * beam.height))
}

/// Gravity-roll reduction
/// `exp(-8 (pi g sin(theta_g) L^2 sigma_v / (v^3 d))^2)`.
///
/// Rolling the assembly by `theta_g` against gravity adds a fall-induced
/// fringe phase `~ g sin(theta_g) L^2 / v^2` whose spread over the velocity
/// distribution dephases the ensemble.
pub fn gravity_roll_reduction<T: Real>(
    theta_g: T,
    beam: &ClusterBeam<T>,
    geometry: &InterferometerGeometry<T>,
    period: T,
) -> T {
    let v = beam.velocity_x;
    let inner = T::PI() * geometry.gravity * theta_g.sin() * geometry.separation
        * geometry.separation
        * beam.velocity_sigma
        / (v * v * v * period);
    (-T::of(8.0) * inner * inner).exp()
}

/// Inverse of [`gravity_roll_reduction`]: the largest gravity-roll angle
/// keeping the reduction above `target`, or `None` when any angle does
/// (zero velocity spread, or the bound falls outside the arcsin domain).
pub fn max_gravity_roll<T: Real>(
    target: T,
    beam: &ClusterBeam<T>,
    geometry: &InterferometerGeometry<T>,
    period: T,
) -> Result<Option<T>> {
    if !(target > T::zero() && target < T::one()) {
        return Err(Error::domain(format!(
            "gravity-roll reduction target must be in (0, 1), got {target}"
        )));
    }
    if beam.velocity_sigma == T::zero() {
        return Ok(None);
    }
    let v = beam.velocity_x;
    let arg = (-target.ln() / T::of(8.0)).sqrt() * period * v * v * v
        / (T::PI() * geometry.gravity * geometry.separation * geometry.separation
            * beam.velocity_sigma);
    if arg >= T::one() {
        return Ok(None);
    }
    Ok(Some(arg.asin()))
}

/// Coriolis fringe phase `k_d * 2 Omega_perp * L^2 / v` with
/// `Omega_perp = Omega_E sin(latitude)`.
pub fn coriolis_phase<T: Real>(
    beam: &ClusterBeam<T>,
    geometry: &InterferometerGeometry<T>,
    period: T,
) -> T {
    let k_d = T::of(2.0) * T::PI() / period;
    k_d * T::of(2.0) * geometry.rotation_perpendicular() * geometry.separation
        * geometry.separation
        / beam.velocity_x
}

/// Coriolis velocity-spread reduction `exp(-(phi_C sigma_v / v)^2 / 2)`.
///
/// Derived, oracle-validated: linearizing the Coriolis phase `phi ~ 1/v`
/// around the mean velocity gives a Gaussian phase spread of width
/// `phi_C sigma_v / v`; averaging `exp(i phi)` over it yields this factor.
/// The identical procedure applied to the `1/v^2` gravity phase reproduces
/// the closed-form gravity-roll reduction exactly.
pub fn coriolis_spread_reduction<T: Real>(
    beam: &ClusterBeam<T>,
    geometry: &InterferometerGeometry<T>,
    period: T,
) -> T {
    let spread = coriolis_phase(beam, geometry, period) * beam.velocity_sigma / beam.velocity_x;
    (-spread * spread / T::of(2.0)).exp()
}

/// Assembly roll that cancels the Coriolis phase with a gravitational one,
/// `theta_0 = -Omega_perp * v / g`.
pub fn optimal_roll<T: Real>(beam: &ClusterBeam<T>, geometry: &InterferometerGeometry<T>) -> T {
    -geometry.rotation_perpendicular() * beam.velocity_x / geometry.gravity
}

/// Total velocity-dependent fringe phase at assembly roll `theta`,
/// `k_d L^2 (g sin(theta) + 2 Omega_perp v) / v^2`.
///
/// Stationary in `v` at `theta = optimal_roll`, which is how a deliberate
/// roll compensates the Coriolis dephasing.
pub fn combined_roll_phase<T: Real>(
    theta: T,
    velocity: T,
    geometry: &InterferometerGeometry<T>,
    period: T,
) -> T {
    let k_d = T::of(2.0) * T::PI() / period;
    k_d * geometry.separation * geometry.separation
        * (geometry.gravity * theta.sin()
            + T::of(2.0) * geometry.rotation_perpendicular() * velocity)
        / (velocity * velocity)
}

/// Reduction from uncorrelated sinusoidal grating vibrations,
/// `|J0(2 pi A1 / d)| * |J0(2 pi A3 / d)| * |J0(4 pi A2 / d)|`.
///
/// The middle grating enters the three-grating phase with weight 2, hence
/// the doubled argument. Equal outer amplitudes recover the symmetric
/// `J0^2 * J0` form.
pub fn independent_vibration_reduction<T: Real>(vib: &VibrationSpec<T>, period: T) -> T {
    let k = T::of(2.0) * T::PI() / period;
    let r1 = bessel_j0(k * vib.amplitude_g1).abs();
    let r3 = bessel_j0(k * vib.amplitude_g3).abs();
    let r2 = bessel_j0(T::of(2.0) * k * vib.amplitude_g2).abs();
    r1 * r3 * r2
}

/// Reduction from one coherent vibration mode of amplitude A and angular
/// frequency omega moving all three gratings,
/// `|J0((8 pi A / d) sin^2(omega L / 2v))|`.
///
/// Transit-time filtering makes the instrument blind to the mode whenever
/// `omega L / v` is a multiple of 2 pi (fringe revivals).
pub fn common_mode_vibration_reduction<T: Real>(
    vib: &VibrationSpec<T>,
    beam: &ClusterBeam<T>,
    geometry: &InterferometerGeometry<T>,
    period: T,
) -> T {
    let half_transit_phase =
        vib.common_omega * geometry.separation / (T::of(2.0) * beam.velocity_x);
    let s = half_transit_phase.sin();
    let arg = T::of(8.0) * T::PI() * vib.common_amplitude / period * s * s;
    bessel_j0(arg).abs()
}
