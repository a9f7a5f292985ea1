//! The instrument description language: flat `[section]` / `key = value`
//! text with unit suffixes, resolved to SI at parse time.
//!
//! Every key has a default taken from the reference instrument (100 kDa
//! clusters at 100 m/s, 266 nm gratings 1 m apart), so an empty document is
//! a valid config. `#` starts a comment. Unknown sections or keys, repeated
//! keys, malformed numbers and violated physical invariants are all
//! rejected with the offending line number where one exists.

use std::collections::HashSet;
use std::fmt;

use tl_align_core::budget::compose_budget_with_target;
use tl_align_core::{Beam, Budget, Geometry, Laser, Vibration};
use tl_align_oracle::OracleConfig;

use crate::units::{parse_count, parse_quantity, Dimension};

/// A config rejection, pointing at the offending line when there is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ConfigError {
            line: Some(line),
            message: message.into(),
        }
    }

    fn global(message: impl Into<String>) -> Self {
        ConfigError {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// A fully-resolved instrument description, all values SI.
#[derive(Debug, Clone, PartialEq)]
pub struct InstrumentConfig {
    // [beam]
    pub mass: f64,
    pub velocity: f64,
    pub velocity_sigma: f64,
    pub velocity_distribution: String,
    pub height: f64,
    pub width: f64,
    // [laser]
    pub wavelength: f64,
    pub linewidth: f64,
    pub power: f64,
    pub power_instability: f64,
    pub waist_x: f64,
    pub waist_y: f64,
    pub pass_distance: f64,
    pub mirror_flatness: f64,
    // [geometry]
    pub separation: f64,
    pub separation_error: f64,
    pub roll: f64,
    pub pitch: f64,
    pub yaw: f64,
    pub gravity_roll: f64,
    pub latitude: f64,
    pub gravity: f64,
    pub earth_rotation: f64,
    // [vibration]
    pub amplitude_g1: f64,
    pub amplitude_g2: f64,
    pub amplitude_g3: f64,
    pub common_amplitude: f64,
    pub common_frequency: f64,
    // [budget]
    pub intrinsic_visibility: f64,
    pub contrast_target: f64,
    // [oracle]
    pub samples: u64,
    pub seed: u64,
    pub chunk_size: u64,
}

impl Default for InstrumentConfig {
    fn default() -> Self {
        InstrumentConfig {
            mass: 1e5 * tl_align_core::constants::ATOMIC_MASS,
            velocity: 100.0,
            velocity_sigma: 0.0,
            velocity_distribution: "gaussian".into(),
            height: 1e-3,
            width: 1e-3,
            wavelength: 266e-9,
            linewidth: 20e6,
            power: 1.0,
            power_instability: 0.0,
            waist_x: 15e-6,
            waist_y: 1.5e-3,
            pass_distance: 1e-3,
            mirror_flatness: 0.0,
            separation: 1.0,
            separation_error: 0.0,
            roll: 0.0,
            pitch: 0.0,
            yaw: 0.0,
            gravity_roll: 0.0,
            latitude: 48.0 * std::f64::consts::PI / 180.0,
            gravity: tl_align_core::constants::STANDARD_GRAVITY,
            earth_rotation: tl_align_core::constants::EARTH_ROTATION,
            amplitude_g1: 0.0,
            amplitude_g2: 0.0,
            amplitude_g3: 0.0,
            common_amplitude: 0.0,
            common_frequency: 0.0,
            intrinsic_visibility: 1.0,
            contrast_target: 0.9,
            samples: 1_000_000,
            seed: 42,
            chunk_size: 65_536,
        }
    }
}

/// The core-typed view of a config, ready for budget and oracle calls.
#[derive(Debug, Clone)]
pub struct Instrument {
    pub beam: Beam,
    pub laser: Laser,
    pub geometry: Geometry,
    pub vibration: Vibration,
}

const SECTIONS: &[&str] = &["beam", "laser", "geometry", "vibration", "budget", "oracle"];

/// Dotted numeric keys a sweep may drive, with their dimensions.
pub const SWEEPABLE: &[(&str, Dimension)] = &[
    ("beam.mass", Dimension::Mass),
    ("beam.velocity", Dimension::Velocity),
    ("beam.velocity_sigma", Dimension::Velocity),
    ("beam.height", Dimension::Length),
    ("beam.width", Dimension::Length),
    ("laser.wavelength", Dimension::Length),
    ("laser.linewidth", Dimension::Frequency),
    ("laser.power", Dimension::Power),
    ("laser.power_instability", Dimension::Bare),
    ("laser.waist_x", Dimension::Length),
    ("laser.waist_y", Dimension::Length),
    ("laser.pass_distance", Dimension::Length),
    ("laser.mirror_flatness", Dimension::Length),
    ("geometry.separation", Dimension::Length),
    ("geometry.separation_error", Dimension::Length),
    ("geometry.roll", Dimension::Angle),
    ("geometry.pitch", Dimension::Angle),
    ("geometry.yaw", Dimension::Angle),
    ("geometry.gravity_roll", Dimension::Angle),
    ("geometry.latitude", Dimension::Angle),
    ("geometry.gravity", Dimension::Bare),
    ("geometry.earth_rotation", Dimension::Bare),
    ("vibration.amplitude_g1", Dimension::Length),
    ("vibration.amplitude_g2", Dimension::Length),
    ("vibration.amplitude_g3", Dimension::Length),
    ("vibration.common_amplitude", Dimension::Length),
    ("vibration.common_frequency", Dimension::Frequency),
    ("budget.intrinsic_visibility", Dimension::Bare),
    ("budget.contrast_target", Dimension::Bare),
];

impl InstrumentConfig {
    /// Expected dimension of a sweepable dotted key.
    pub fn path_dimension(path: &str) -> Option<Dimension> {
        SWEEPABLE
            .iter()
            .find(|(name, _)| *name == path)
            .map(|(_, dim)| *dim)
    }

    /// Overwrites one sweepable value, addressed by `section.key`.
    pub fn set_path(&mut self, path: &str, value: f64) -> Result<(), String> {
        let slot = match path {
            "beam.mass" => &mut self.mass,
            "beam.velocity" => &mut self.velocity,
            "beam.velocity_sigma" => &mut self.velocity_sigma,
            "beam.height" => &mut self.height,
            "beam.width" => &mut self.width,
            "laser.wavelength" => &mut self.wavelength,
            "laser.linewidth" => &mut self.linewidth,
            "laser.power" => &mut self.power,
            "laser.power_instability" => &mut self.power_instability,
            "laser.waist_x" => &mut self.waist_x,
            "laser.waist_y" => &mut self.waist_y,
            "laser.pass_distance" => &mut self.pass_distance,
            "laser.mirror_flatness" => &mut self.mirror_flatness,
            "geometry.separation" => &mut self.separation,
            "geometry.separation_error" => &mut self.separation_error,
            "geometry.roll" => &mut self.roll,
            "geometry.pitch" => &mut self.pitch,
            "geometry.yaw" => &mut self.yaw,
            "geometry.gravity_roll" => &mut self.gravity_roll,
            "geometry.latitude" => &mut self.latitude,
            "geometry.gravity" => &mut self.gravity,
            "geometry.earth_rotation" => &mut self.earth_rotation,
            "vibration.amplitude_g1" => &mut self.amplitude_g1,
            "vibration.amplitude_g2" => &mut self.amplitude_g2,
            "vibration.amplitude_g3" => &mut self.amplitude_g3,
            "vibration.common_amplitude" => &mut self.common_amplitude,
            "vibration.common_frequency" => &mut self.common_frequency,
            "budget.intrinsic_visibility" => &mut self.intrinsic_visibility,
            "budget.contrast_target" => &mut self.contrast_target,
            _ => return Err(format!("no sweepable parameter `{path}`")),
        };
        *slot = value;
        Ok(())
    }

    /// Builds the validated core types, surfacing invariant violations.
    pub fn instrument(&self) -> Result<Instrument, String> {
        let beam = Beam::new(
            self.mass,
            self.velocity,
            self.velocity_sigma,
            self.height,
            self.width,
        )
        .map_err(|e| e.to_string())?;
        let mut laser = Laser::new(
            self.wavelength,
            self.linewidth,
            self.power,
            self.power_instability,
            self.waist_x,
            self.waist_y,
            self.pass_distance,
        )
        .map_err(|e| e.to_string())?;
        if self.mirror_flatness < 0.0 {
            return Err("mirror flatness must be non-negative".into());
        }
        laser.mirror_flatness = self.mirror_flatness;
        let geometry = Geometry::new(
            self.separation,
            self.separation_error,
            self.roll,
            self.pitch,
            self.yaw,
            self.gravity_roll,
            self.latitude,
            self.gravity,
            self.earth_rotation,
        )
        .map_err(|e| e.to_string())?;
        let vibration = Vibration::new(
            self.amplitude_g1,
            self.amplitude_g2,
            self.amplitude_g3,
            self.common_amplitude,
            std::f64::consts::TAU * self.common_frequency,
        )
        .map_err(|e| e.to_string())?;
        Ok(Instrument {
            beam,
            laser,
            geometry,
            vibration,
        })
    }

    /// Composes the alignment budget for this config.
    pub fn budget(&self) -> Result<Budget, String> {
        let i = self.instrument()?;
        compose_budget_with_target(
            &i.beam,
            &i.laser,
            &i.geometry,
            &i.vibration,
            self.intrinsic_visibility,
            self.contrast_target,
        )
        .map_err(|e| e.to_string())
    }

    /// Sampling settings for the Monte Carlo validators.
    pub fn oracle(&self) -> OracleConfig {
        OracleConfig {
            sample_count: self.samples,
            seed: self.seed,
            chunk_size: self.chunk_size,
        }
    }

    /// Writes the config back out in full, one `key = value` per line with
    /// bare SI numbers, such that parsing the result reproduces `self`
    /// exactly.
    pub fn render(&self) -> String {
        format!(
            "[beam]\n\
             mass = {:e}\n\
             velocity = {:e}\n\
             velocity_sigma = {:e}\n\
             velocity_distribution = {}\n\
             height = {:e}\n\
             width = {:e}\n\
             \n[laser]\n\
             wavelength = {:e}\n\
             linewidth = {:e}\n\
             power = {:e}\n\
             power_instability = {:e}\n\
             waist_x = {:e}\n\
             waist_y = {:e}\n\
             pass_distance = {:e}\n\
             mirror_flatness = {:e}\n\
             \n[geometry]\n\
             separation = {:e}\n\
             separation_error = {:e}\n\
             roll = {:e}\n\
             pitch = {:e}\n\
             yaw = {:e}\n\
             gravity_roll = {:e}\n\
             latitude = {:e}\n\
             gravity = {:e}\n\
             earth_rotation = {:e}\n\
             \n[vibration]\n\
             amplitude_g1 = {:e}\n\
             amplitude_g2 = {:e}\n\
             amplitude_g3 = {:e}\n\
             common_amplitude = {:e}\n\
             common_frequency = {:e}\n\
             \n[budget]\n\
             intrinsic_visibility = {:e}\n\
             contrast_target = {:e}\n\
             \n[oracle]\n\
             samples = {}\n\
             seed = {}\n\
             chunk_size = {}\n",
            self.mass,
            self.velocity,
            self.velocity_sigma,
            self.velocity_distribution,
            self.height,
            self.width,
            self.wavelength,
            self.linewidth,
            self.power,
            self.power_instability,
            self.waist_x,
            self.waist_y,
            self.pass_distance,
            self.mirror_flatness,
            self.separation,
            self.separation_error,
            self.roll,
            self.pitch,
            self.yaw,
            self.gravity_roll,
            self.latitude,
            self.gravity,
            self.earth_rotation,
            self.amplitude_g1,
            self.amplitude_g2,
            self.amplitude_g3,
            self.common_amplitude,
            self.common_frequency,
            self.intrinsic_visibility,
            self.contrast_target,
            self.samples,
            self.seed,
            self.chunk_size,
        )
    }
}

/// Parses a config document, filling unspecified keys with the reference
/// instrument and validating all physical invariants.
pub fn parse_config(text: &str) -> Result<InstrumentConfig, ConfigError> {
    let mut cfg = InstrumentConfig::default();
    let mut section: Option<&str> = None;
    let mut seen: HashSet<String> = HashSet::new();
    let mut period: Option<(usize, f64)> = None;

    for (index, raw) in text.lines().enumerate() {
        let number = index + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| ConfigError::at(number, format!("unterminated section `{line}`")))?
                .trim();
            section = Some(
                SECTIONS
                    .iter()
                    .find(|s| **s == name)
                    .copied()
                    .ok_or_else(|| ConfigError::at(number, format!("unknown section `[{name}]`")))?,
            );
            continue;
        }
        let section = section
            .ok_or_else(|| ConfigError::at(number, "key before any [section] header"))?;
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError::at(number, format!("expected `key = value`, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if value.is_empty() {
            return Err(ConfigError::at(number, format!("missing value for `{key}`")));
        }
        if !seen.insert(format!("{section}.{key}")) {
            return Err(ConfigError::at(
                number,
                format!("duplicate key `{key}` in [{section}]"),
            ));
        }

        let quantity = |dim: Dimension| -> Result<f64, ConfigError> {
            parse_quantity(value, dim).map_err(|m| ConfigError::at(number, m))
        };
        let count = || -> Result<u64, ConfigError> {
            parse_count(value).map_err(|m| ConfigError::at(number, m))
        };

        match (section, key) {
            ("beam", "mass") => cfg.mass = quantity(Dimension::Mass)?,
            ("beam", "velocity") => cfg.velocity = quantity(Dimension::Velocity)?,
            ("beam", "velocity_sigma") => cfg.velocity_sigma = quantity(Dimension::Velocity)?,
            ("beam", "velocity_distribution") => {
                if value != "gaussian" {
                    return Err(ConfigError::at(
                        number,
                        format!("unsupported velocity distribution `{value}`, only `gaussian`"),
                    ));
                }
                cfg.velocity_distribution = value.into();
            }
            ("beam", "height") => cfg.height = quantity(Dimension::Length)?,
            ("beam", "width") => cfg.width = quantity(Dimension::Length)?,
            ("laser", "wavelength") => cfg.wavelength = quantity(Dimension::Length)?,
            ("laser", "linewidth") => cfg.linewidth = quantity(Dimension::Frequency)?,
            ("laser", "power") => cfg.power = quantity(Dimension::Power)?,
            ("laser", "power_instability") => {
                cfg.power_instability = quantity(Dimension::Bare)?
            }
            ("laser", "waist_x") => cfg.waist_x = quantity(Dimension::Length)?,
            ("laser", "waist_y") => cfg.waist_y = quantity(Dimension::Length)?,
            ("laser", "pass_distance") => cfg.pass_distance = quantity(Dimension::Length)?,
            ("laser", "mirror_flatness") => cfg.mirror_flatness = quantity(Dimension::Length)?,
            ("laser", "period") => period = Some((number, quantity(Dimension::Length)?)),
            ("geometry", "separation") => cfg.separation = quantity(Dimension::Length)?,
            ("geometry", "separation_error") => {
                cfg.separation_error = quantity(Dimension::Length)?
            }
            ("geometry", "roll") => cfg.roll = quantity(Dimension::Angle)?,
            ("geometry", "pitch") => cfg.pitch = quantity(Dimension::Angle)?,
            ("geometry", "yaw") => cfg.yaw = quantity(Dimension::Angle)?,
            ("geometry", "gravity_roll") => cfg.gravity_roll = quantity(Dimension::Angle)?,
            ("geometry", "latitude") => cfg.latitude = quantity(Dimension::Angle)?,
            ("geometry", "gravity") => cfg.gravity = quantity(Dimension::Bare)?,
            ("geometry", "earth_rotation") => cfg.earth_rotation = quantity(Dimension::Bare)?,
            ("vibration", "amplitude_g1") => cfg.amplitude_g1 = quantity(Dimension::Length)?,
            ("vibration", "amplitude_g2") => cfg.amplitude_g2 = quantity(Dimension::Length)?,
            ("vibration", "amplitude_g3") => cfg.amplitude_g3 = quantity(Dimension::Length)?,
            ("vibration", "common_amplitude") => {
                cfg.common_amplitude = quantity(Dimension::Length)?
            }
            ("vibration", "common_frequency") => {
                cfg.common_frequency = quantity(Dimension::Frequency)?
            }
            ("budget", "intrinsic_visibility") => {
                cfg.intrinsic_visibility = quantity(Dimension::Bare)?
            }
            ("budget", "contrast_target") => cfg.contrast_target = quantity(Dimension::Bare)?,
            ("oracle", "samples") => cfg.samples = count()?,
            ("oracle", "seed") => cfg.seed = count()?,
            ("oracle", "chunk_size") => cfg.chunk_size = count()?,
            _ => {
                return Err(ConfigError::at(
                    number,
                    format!("unknown key `{key}` in [{section}]"),
                ))
            }
        }
    }

    if let Some((number, value)) = period {
        let expected = cfg.wavelength / 2.0;
        if (value - expected).abs() > 1e-12 * cfg.wavelength {
            return Err(ConfigError::at(
                number,
                format!(
                    "period {value:e} must equal half the wavelength, {expected:e}"
                ),
            ));
        }
    }

    // surface every core invariant violation as a parse failure
    cfg.budget().map_err(ConfigError::global)?;
    Ok(cfg)
}
