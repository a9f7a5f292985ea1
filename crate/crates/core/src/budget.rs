//! The alignment budget: every criterion and reduction factor of one
//! instrument configuration, composed into a total-visibility estimate.

use crate::beam::ClusterBeam;
use crate::criteria::{
    illuminated_slits, intensity_stability_check, max_slit_count, mirror_flatness_check,
    pitch_limit, separation_tolerance, yaw_limit, Check,
};
use crate::geometry::{InterferometerGeometry, VibrationSpec};
use crate::optics::{wavefront_max_pass_distance, GratingLaser};
use crate::reduction::{
    common_mode_vibration_reduction, coriolis_spread_reduction, gravity_roll_reduction,
    independent_vibration_reduction, max_gravity_roll, roll_limit, roll_reduction,
    ReductionEffect, ReductionFactor,
};
use crate::{Error, Real, Result};

/// Contrast level the roll and gravity-roll limits are quoted at.
pub const CONTRAST_TARGET: f64 = 0.9;

/// One criterion row of the budget table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BudgetRow<T> {
    /// Degree of freedom under test.
    pub name: &'static str,
    /// Strict upper-limit comparison for this row.
    pub check: Check<T>,
    /// Secondary, less conservative bound where one exists (the wavefront
    /// row reports the exact shear bound next to the Rayleigh gate).
    pub relaxed_limit: Option<T>,
}

/// Full budget of an instrument configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignmentBudget<T> {
    /// Criterion rows in fixed presentation order.
    pub rows: Vec<BudgetRow<T>>,
    /// Multiplicative visibility-reduction factors.
    pub reductions: Vec<ReductionFactor<T>>,
    /// Assumed interference visibility of the perfectly aligned instrument.
    pub intrinsic_visibility: T,
    /// `intrinsic_visibility` times every reduction factor.
    pub total_visibility: T,
}

impl<T: Real> AlignmentBudget<T> {
    /// True when every criterion row passes.
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.check.pass)
    }
}

/// Evaluates all alignment criteria and reduction factors at the quoted
/// contrast target.
pub fn compose_budget<T: Real>(
    beam: &ClusterBeam<T>,
    laser: &GratingLaser<T>,
    geometry: &InterferometerGeometry<T>,
    vibration: &VibrationSpec<T>,
    intrinsic_visibility: T,
) -> Result<AlignmentBudget<T>> {
    compose_budget_with_target(
        beam,
        laser,
        geometry,
        vibration,
        intrinsic_visibility,
        T::of(CONTRAST_TARGET),
    )
}

/// [`compose_budget`] with an explicit contrast target for the roll and
/// gravity-roll limits.
pub fn compose_budget_with_target<T: Real>(
    beam: &ClusterBeam<T>,
    laser: &GratingLaser<T>,
    geometry: &InterferometerGeometry<T>,
    vibration: &VibrationSpec<T>,
    intrinsic_visibility: T,
    contrast_target: T,
) -> Result<AlignmentBudget<T>> {
    if !(intrinsic_visibility >= T::zero() && intrinsic_visibility <= T::one()) {
        return Err(Error::input(format!(
            "intrinsic visibility must be in [0, 1], got {intrinsic_visibility}"
        )));
    }
    let d = laser.period();
    let slits = illuminated_slits(beam.width, d)?;
    let separation_tol = separation_tolerance(slits, geometry.separation)?;
    let pass_bound = wavefront_max_pass_distance(laser)?;
    let gravity_limit = max_gravity_roll(contrast_target, beam, geometry, d)?
        .unwrap_or_else(T::infinity);

    let rows = vec![
        BudgetRow {
            name: "slit count",
            check: Check::strict_below(slits, max_slit_count(laser)),
            relaxed_limit: None,
        },
        BudgetRow {
            name: "intensity stability",
            check: intensity_stability_check(laser),
            relaxed_limit: None,
        },
        BudgetRow {
            name: "grating separation",
            check: Check::strict_below(geometry.separation_error, separation_tol),
            relaxed_limit: None,
        },
        BudgetRow {
            name: "grating roll",
            check: Check::strict_below(
                geometry.roll.abs(),
                roll_limit(contrast_target, beam, d)?,
            ),
            relaxed_limit: None,
        },
        BudgetRow {
            name: "grating yaw",
            check: Check::strict_below(geometry.yaw.abs(), yaw_limit(laser)),
            relaxed_limit: None,
        },
        BudgetRow {
            name: "grating pitch",
            check: Check::strict_below(
                geometry.pitch.abs(),
                pitch_limit(laser, separation_tol)?,
            ),
            relaxed_limit: None,
        },
        BudgetRow {
            name: "gravity roll",
            check: Check::strict_below(geometry.common_roll_gravity.abs(), gravity_limit),
            relaxed_limit: None,
        },
        BudgetRow {
            name: "pass distance",
            check: Check::strict_below(laser.pass_distance, pass_bound.conservative),
            relaxed_limit: Some(pass_bound.exact),
        },
        BudgetRow {
            name: "mirror flatness",
            check: mirror_flatness_check(laser.mirror_flatness, laser.wavelength),
            relaxed_limit: None,
        },
        BudgetRow {
            name: "beam height",
            check: Check::strict_below(beam.height, laser.waist_y),
            relaxed_limit: None,
        },
    ];

    let reductions = vec![
        ReductionFactor {
            effect: ReductionEffect::Roll,
            value: roll_reduction(geometry.roll, beam, d),
        },
        ReductionFactor {
            effect: ReductionEffect::GravityRoll,
            value: gravity_roll_reduction(geometry.common_roll_gravity, beam, geometry, d),
        },
        ReductionFactor {
            effect: ReductionEffect::CoriolisSpread,
            value: coriolis_spread_reduction(beam, geometry, d),
        },
        ReductionFactor {
            effect: ReductionEffect::IndependentVibration,
            value: independent_vibration_reduction(vibration, d),
        },
        ReductionFactor {
            effect: ReductionEffect::CommonVibration,
            value: common_mode_vibration_reduction(vibration, beam, geometry, d),
        },
    ];

    let mut total_visibility = intrinsic_visibility;
    for r in &reductions {
        total_visibility = total_visibility * r.value;
    }

    Ok(AlignmentBudget {
        rows,
        reductions,
        intrinsic_visibility,
        total_visibility,
    })
}
