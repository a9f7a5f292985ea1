//! Design-analysis core for three-grating optical Talbot-Lau interferometry.
//!
//! The interferometer consists of three standing-wave photodepletion gratings
//! of period `d = lambda/2` spaced by a distance `L`. Matter-wave fringes at
//! the third grating survive only if every grating is positioned and oriented
//! within tolerances set by the grating period, and if vibrations and inertial
//! forces do not smear the fringe phase over the velocity distribution of the
//! particle beam. This crate provides:
//!
//! - beam and optics primitives (de Broglie wavelength, Talbot length,
//!   Gaussian beam propagation, the standing-wave intensity near the fold
//!   mirror),
//! - the individual alignment criteria and visibility-reduction factors,
//! - fringe-visibility extraction from position scans,
//! - a budget combining all criteria and reduction factors into a single
//!   pass/fail table and a total-visibility estimate.
//!
//! All formulas are generic over the floating-point scalar through [`Real`];
//! the aliases at the crate root fix `f64`, which is what the companion
//! Monte Carlo oracle and the command-line tool use.

pub mod beam;
pub mod budget;
pub mod constants;
pub mod criteria;
mod error;
pub mod geometry;
pub mod math;
pub mod optics;
pub mod reduction;
mod scalar;
pub mod visibility;

pub use error::{Error, Result};
pub use scalar::Real;

/// `f64` instantiations used by the oracle and CLI layers.
pub type Beam = beam::ClusterBeam<f64>;
pub type Laser = optics::GratingLaser<f64>;
pub type BeamState = optics::GaussianBeamState<f64>;
pub type Geometry = geometry::InterferometerGeometry<f64>;
pub type Vibration = geometry::VibrationSpec<f64>;
pub type Budget = budget::AlignmentBudget<f64>;
