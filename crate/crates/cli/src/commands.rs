//! Subcommand implementations. Each takes a parsed config and a writer,
//! performs its analysis and returns the process exit code: 0 for success,
//! 1 for a failed strict gate or oracle disagreement, with input problems
//! reported as errors that the binary maps to exit code 2.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;

use tl_align_core::beam::ClusterBeam;
use tl_align_core::geometry::VibrationSpec;
use tl_align_core::optics::standing_wave_intensity;
use tl_align_core::reduction::{
    common_mode_vibration_reduction, independent_vibration_reduction, max_gravity_roll,
    roll_reduction, ReductionEffect,
};
use tl_align_oracle::{
    oracle_common_mode, oracle_coriolis_spread, oracle_gravity_roll,
    oracle_independent_vibrations, OracleResult,
};

use crate::config::InstrumentConfig;
use crate::report::{budget_csv, budget_table, csv_number, oracle_table};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureSet {
    Fig2,
    Fig3,
    Fig4,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleFactor {
    All,
    Grav,
    Coriolis,
    VibIndep,
    VibCommon,
}

/// One-parameter sweep: evenly spaced values between two bounds.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub param: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub log: bool,
}

impl SweepSpec {
    fn validate(&self) -> Result<(), CliError> {
        if InstrumentConfig::path_dimension(&self.param).is_none() {
            return Err(CliError::Input(format!(
                "no sweepable parameter `{}`",
                self.param
            )));
        }
        if self.points < 2 {
            return Err(CliError::Input("a sweep needs at least 2 points".into()));
        }
        if !(self.start < self.stop) {
            return Err(CliError::Input(format!(
                "sweep start {} must be below stop {}",
                self.start, self.stop
            )));
        }
        if self.log && self.start <= 0.0 {
            return Err(CliError::Input(
                "log spacing needs a positive start value".into(),
            ));
        }
        Ok(())
    }

    fn value(&self, index: usize) -> f64 {
        let steps = (self.points - 1) as f64;
        if self.log {
            let span = (self.stop / self.start).ln();
            self.start * (span * index as f64 / steps).exp()
        } else {
            self.start + (self.stop - self.start) * index as f64 / steps
        }
    }
}

/// Budget report with the optional strict gate.
pub fn cmd_budget(
    cfg: &InstrumentConfig,
    strict: bool,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let budget = cfg.budget().map_err(CliError::Input)?;
    match format {
        OutputFormat::Table => budget_table(cfg, &budget, out)?,
        OutputFormat::Csv => budget_csv(&budget, out)?,
    }
    Ok(if strict && !budget.all_pass() { 1 } else { 0 })
}

/// Echoes the fully-resolved config.
pub fn cmd_check_config(cfg: &InstrumentConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    out.write_all(cfg.render().as_bytes())?;
    Ok(0)
}

/// Sweeps one parameter and emits reduction factors, solved limits and the
/// composed visibility per point.
pub fn cmd_sweep(
    cfg: &InstrumentConfig,
    spec: &SweepSpec,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    spec.validate()?;
    writeln!(
        out,
        "{},roll_reduction,gravity_roll_reduction,coriolis_reduction,\
         independent_vibration_reduction,common_mode_reduction,total_visibility,\
         roll_limit,gravity_roll_limit",
        spec.param
    )?;
    for index in 0..spec.points {
        let value = spec.value(index);
        let mut point = cfg.clone();
        point.set_path(&spec.param, value).map_err(CliError::Input)?;
        let budget = point.budget().map_err(|m| {
            CliError::Input(format!("{} = {value:e}: {m}", spec.param))
        })?;
        let factor = |effect: ReductionEffect| {
            budget
                .reductions
                .iter()
                .find(|r| r.effect == effect)
                .map(|r| r.value)
                .unwrap_or(f64::NAN)
        };
        let limit = |name: &str| {
            budget
                .rows
                .iter()
                .find(|r| r.name == name)
                .map(|r| r.check.limit)
                .unwrap_or(f64::NAN)
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            csv_number(value),
            csv_number(factor(ReductionEffect::Roll)),
            csv_number(factor(ReductionEffect::GravityRoll)),
            csv_number(factor(ReductionEffect::CoriolisSpread)),
            csv_number(factor(ReductionEffect::IndependentVibration)),
            csv_number(factor(ReductionEffect::CommonVibration)),
            csv_number(budget.total_visibility),
            csv_number(limit("grating roll")),
            csv_number(limit("gravity roll")),
        )?;
    }
    Ok(0)
}

fn grid(start: f64, stop: f64, points: usize, index: usize) -> f64 {
    start + (stop - start) * index as f64 / (points - 1) as f64
}

fn create(dir: &Path, name: &str, log: &mut dyn Write) -> Result<BufWriter<fs::File>, CliError> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let file = fs::File::create(&path)?;
    writeln!(log, "wrote {}", path.display())?;
    Ok(BufWriter::new(file))
}

/// Emits the figure-data bundles: standing-wave intensity grids, roll and
/// gravity-roll sweeps, and the two vibration sweeps.
pub fn cmd_figures(
    cfg: &InstrumentConfig,
    set: FigureSet,
    pass_distances: Option<&[f64]>,
    dir: &Path,
    log: &mut dyn Write,
) -> Result<i32, CliError> {
    let instrument = cfg.instrument().map_err(CliError::Input)?;
    let laser = &instrument.laser;
    let d = laser.period();

    if matches!(set, FigureSet::Fig2 | FigureSet::All) {
        let z_r = laser.rayleigh_length_x();
        let defaults = [z_r / 50.0, z_r / 2.0, z_r];
        let distances = pass_distances.unwrap_or(&defaults);
        for (i, &z0) in distances.iter().enumerate() {
            if z0 < 0.0 {
                return Err(CliError::Input(format!(
                    "pass distance {z0:e} must be non-negative"
                )));
            }
            let mut file = create(dir, &format!("fig2_intensity_{}.csv", i + 1), log)?;
            writeln!(file, "x,z,intensity")?;
            let half_width = 2.0 * laser.waist_x * (1.0 + (z0 / z_r) * (z0 / z_r)).sqrt();
            let z_lo = (z0 - 2.0 * d).max(0.0);
            let z_hi = z0 + 2.0 * d;
            for ix in 0..61 {
                let x = grid(-half_width, half_width, 61, ix);
                for iz in 0..121 {
                    let z = grid(z_lo, z_hi, 121, iz);
                    let intensity =
                        standing_wave_intensity(laser, x, z).map_err(|e| {
                            CliError::Input(e.to_string())
                        })?;
                    writeln!(
                        file,
                        "{},{},{}",
                        csv_number(x),
                        csv_number(z),
                        csv_number(intensity)
                    )?;
                }
            }
        }
    }

    if matches!(set, FigureSet::Fig3 | FigureSet::All) {
        let heights = [0.5e-3, 1e-3, 2e-3];
        let beams: Vec<ClusterBeam<f64>> = heights
            .iter()
            .map(|&h| {
                ClusterBeam::new(cfg.mass, cfg.velocity, cfg.velocity_sigma, h, cfg.width)
                    .map_err(|e| CliError::Input(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        let mut file = create(dir, "fig3_roll.csv", log)?;
        writeln!(file, "roll,reduction_h0.5mm,reduction_h1mm,reduction_h2mm")?;
        for i in 0..201 {
            let theta = grid(0.0, 1e-4, 201, i);
            writeln!(
                file,
                "{},{},{},{}",
                csv_number(theta),
                csv_number(roll_reduction(theta, &beams[0], d)),
                csv_number(roll_reduction(theta, &beams[1], d)),
                csv_number(roll_reduction(theta, &beams[2], d)),
            )?;
        }

        let ratios = [0.05, 0.10, 0.20];
        let mut file = create(dir, "fig3_gravity_roll_limit.csv", log)?;
        writeln!(
            file,
            "velocity,max_roll_spread5pct,max_roll_spread10pct,max_roll_spread20pct"
        )?;
        for i in 0..241 {
            let v = grid(20.0, 500.0, 241, i);
            let mut cells = vec![csv_number(v)];
            for &ratio in &ratios {
                let beam =
                    ClusterBeam::new(cfg.mass, v, ratio * v, cfg.height, cfg.width)
                        .map_err(|e| CliError::Input(e.to_string()))?;
                let bound =
                    max_gravity_roll(cfg.contrast_target, &beam, &instrument.geometry, d)
                        .map_err(|e| CliError::Input(e.to_string()))?
                        .unwrap_or(f64::INFINITY);
                cells.push(csv_number(bound));
            }
            writeln!(file, "{}", cells.join(","))?;
        }
    }

    if matches!(set, FigureSet::Fig4 | FigureSet::All) {
        // caption-matched: monochromatic 90 m/s beam, 1/5/10 nm amplitudes
        let beam = ClusterBeam::new(cfg.mass, 90.0, 0.0, cfg.height, cfg.width)
            .map_err(|e| CliError::Input(e.to_string()))?;
        let amplitudes = [1e-9, 5e-9, 10e-9];
        let mut file = create(dir, "fig4_common_mode.csv", log)?;
        writeln!(file, "frequency,reduction_a1nm,reduction_a5nm,reduction_a10nm")?;
        for i in 0..601 {
            let f = grid(0.0, 300.0, 601, i);
            let mut cells = vec![csv_number(f)];
            for &a in &amplitudes {
                let vib = VibrationSpec::new(0.0, 0.0, 0.0, a, std::f64::consts::TAU * f)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                cells.push(csv_number(common_mode_vibration_reduction(
                    &vib,
                    &beam,
                    &instrument.geometry,
                    d,
                )));
            }
            writeln!(file, "{}", cells.join(","))?;
        }

        let mut file = create(dir, "fig4_independent.csv", log)?;
        writeln!(file, "amplitude,reduction_outer,reduction_middle,reduction_all")?;
        for i in 0..601 {
            let a = grid(0.0, 60e-9, 601, i);
            let outer = VibrationSpec::new(a, 0.0, 0.0, 0.0, 0.0).unwrap();
            let middle = VibrationSpec::new(0.0, a, 0.0, 0.0, 0.0).unwrap();
            let all = VibrationSpec::new(a, a, a, 0.0, 0.0).unwrap();
            writeln!(
                file,
                "{},{},{},{}",
                csv_number(a),
                csv_number(independent_vibration_reduction(&outer, d)),
                csv_number(independent_vibration_reduction(&middle, d)),
                csv_number(independent_vibration_reduction(&all, d)),
            )?;
        }
    }

    Ok(0)
}

#[cfg(debug_assertions)]
fn corrupt_for_detector_test(mut result: OracleResult) -> OracleResult {
    if std::env::var_os("TL_ALIGN_ORACLE_CORRUPT").is_some() {
        result.analytic_reference += 0.5;
        let gap = (result.estimate - result.analytic_reference).abs();
        result.sigma_distance = if result.standard_error == 0.0 {
            if gap == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            gap / result.standard_error
        };
    }
    result
}

#[cfg(not(debug_assertions))]
fn corrupt_for_detector_test(result: OracleResult) -> OracleResult {
    result
}

/// Runs the Monte Carlo validators and gates on 5 sigma disagreement.
pub fn cmd_oracle(
    cfg: &InstrumentConfig,
    factor: OracleFactor,
    samples: Option<u64>,
    seed: Option<u64>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let instrument = cfg.instrument().map_err(CliError::Input)?;
    let mut oracle_cfg = cfg.oracle();
    if let Some(n) = samples {
        oracle_cfg.sample_count = n;
    }
    if let Some(s) = seed {
        oracle_cfg.seed = s;
    }
    let d = instrument.laser.period();
    let beam = &instrument.beam;
    let geometry = &instrument.geometry;
    let vibration = &instrument.vibration;

    let mut rows: Vec<(&str, OracleResult)> = Vec::new();
    let mut run = |name, result: tl_align_core::Result<OracleResult>| -> Result<(), CliError> {
        let result = result.map_err(|e| CliError::Input(e.to_string()))?;
        rows.push((name, corrupt_for_detector_test(result)));
        Ok(())
    };

    if matches!(factor, OracleFactor::Grav | OracleFactor::All) {
        run(
            "gravity roll",
            oracle_gravity_roll(beam, geometry, d, &oracle_cfg),
        )?;
    }
    if matches!(factor, OracleFactor::Coriolis | OracleFactor::All) {
        run(
            "coriolis spread",
            oracle_coriolis_spread(beam, geometry, d, &oracle_cfg),
        )?;
    }
    if matches!(factor, OracleFactor::VibIndep | OracleFactor::All) {
        run(
            "independent vibration",
            oracle_independent_vibrations(vibration, d, &oracle_cfg),
        )?;
    }
    if matches!(factor, OracleFactor::VibCommon | OracleFactor::All) {
        run(
            "common-mode vibration",
            oracle_common_mode(vibration, beam, geometry, d, &oracle_cfg),
        )?;
    }

    oracle_table(&oracle_cfg, &rows, out)?;
    Ok(if rows.iter().any(|(_, r)| r.sigma_distance > 5.0) {
        1
    } else {
        0
    })
}
