//! Physical constants, CODATA 2018 adjustment.
//!
//! Every constant used anywhere in the workspace lives here so that all
//! formulas agree on the same values.

/// Planck constant in J s. Exact by the 2019 SI definition.
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Unified atomic mass unit in kg.
pub const ATOMIC_MASS: f64 = 1.660_539_066_60e-27;

/// Speed of light in vacuum in m/s. Exact by definition.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Standard gravitational acceleration in m/s^2, default for budget work.
pub const STANDARD_GRAVITY: f64 = 9.81;

/// Earth rotation rate in rad/s.
pub const EARTH_ROTATION: f64 = 7.2e-5;
