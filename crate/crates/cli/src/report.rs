//! Rendering of budget and oracle results as plain-text tables and CSV.
//!
//! CSV cells carry full precision (9 significant digits, scientific, `.`
//! decimal point); the text table rounds to 4 significant digits for
//! reading. All rounding happens here and nowhere else.

use std::io::{self, Write};

use tl_align_core::Budget;
use tl_align_oracle::{OracleConfig, OracleResult, RNG_ALGORITHM};

use crate::config::InstrumentConfig;

/// Full-precision cell: 9 significant digits, scientific notation.
pub fn csv_number(x: f64) -> String {
    format!("{x:.8e}")
}

/// Display cell: 4 significant digits, scientific notation.
pub fn sig4(x: f64) -> String {
    format!("{x:.3e}")
}

fn yes_no(pass: bool) -> &'static str {
    if pass {
        "yes"
    } else {
        "no"
    }
}

/// Short formula reminder for each budget criterion.
fn restriction(name: &str) -> &'static str {
    match name {
        "slit count" => "N < nu/(10 dnu)",
        "intensity stability" => "dI/I < 0.1",
        "grating separation" => "dL < L/N",
        "grating roll" => "|sinc(2 pi theta H/d)| > R*",
        "grating yaw" => "theta < atan(d/(4 wx))/10",
        "grating pitch" => "theta < dL_max/wy",
        "gravity roll" => "R_g(theta_g) > R*",
        "pass distance" => "z0 < z_R",
        "mirror flatness" => "s < lambda/10",
        "beam height" => "H < wy",
        _ => "",
    }
}

/// The budget as a text report: resolved config first, then the criterion
/// table, reduction factors and the composed visibility.
pub fn budget_table(
    cfg: &InstrumentConfig,
    budget: &Budget,
    out: &mut dyn Write,
) -> io::Result<()> {
    writeln!(out, "# resolved instrument")?;
    for line in cfg.render().lines() {
        writeln!(out, "  {line}")?;
    }
    writeln!(out)?;
    writeln!(
        out,
        "{:<22}{:<30}{:>12}{:>12}{:>12}  {}",
        "criterion", "restriction", "limit", "configured", "margin", "pass"
    )?;
    for row in &budget.rows {
        writeln!(
            out,
            "{:<22}{:<30}{:>12}{:>12}{:>12}  {}",
            row.name,
            restriction(row.name),
            sig4(row.check.limit),
            sig4(row.check.actual),
            sig4(row.check.margin),
            yes_no(row.check.pass)
        )?;
        if let Some(relaxed) = row.relaxed_limit {
            writeln!(
                out,
                "{:<22}{:<30}{:>12}{:>12}{:>12}  {}",
                "",
                "  relaxed exact bound",
                sig4(relaxed),
                "",
                "",
                ""
            )?;
        }
    }
    writeln!(out)?;
    writeln!(out, "reduction factors")?;
    for r in &budget.reductions {
        writeln!(out, "{:<26}{}", r.effect.label(), csv_number(r.value))?;
    }
    writeln!(out)?;
    writeln!(
        out,
        "{:<26}{}",
        "intrinsic visibility",
        csv_number(budget.intrinsic_visibility)
    )?;
    writeln!(
        out,
        "{:<26}{}",
        "total visibility",
        csv_number(budget.total_visibility)
    )?;
    Ok(())
}

/// The budget as CSV: criterion rows, reduction rows and the totals share
/// one record layout with unused cells left empty.
pub fn budget_csv(budget: &Budget, out: &mut dyn Write) -> io::Result<()> {
    writeln!(
        out,
        "record,name,restriction,limit,configured,margin,pass,relaxed_limit,value"
    )?;
    for row in &budget.rows {
        writeln!(
            out,
            "criterion,{},{},{},{},{},{},{},",
            row.name,
            restriction(row.name),
            csv_number(row.check.limit),
            csv_number(row.check.actual),
            csv_number(row.check.margin),
            yes_no(row.check.pass),
            row.relaxed_limit.map(csv_number).unwrap_or_default()
        )?;
    }
    for r in &budget.reductions {
        writeln!(
            out,
            "reduction,{},,,,,,,{}",
            r.effect.label(),
            csv_number(r.value)
        )?;
    }
    writeln!(
        out,
        "input,intrinsic visibility,,,,,,,{}",
        csv_number(budget.intrinsic_visibility)
    )?;
    writeln!(
        out,
        "total,total visibility,,,,,,,{}",
        csv_number(budget.total_visibility)
    )?;
    Ok(())
}

/// Oracle validation rows with the reproducibility header.
pub fn oracle_table(
    oracle: &OracleConfig,
    rows: &[(&str, OracleResult)],
    out: &mut dyn Write,
) -> io::Result<()> {
    writeln!(
        out,
        "# rng {RNG_ALGORITHM} v{} seed {} samples {} chunk {}",
        env!("CARGO_PKG_VERSION"),
        oracle.seed,
        oracle.sample_count,
        oracle.chunk_size
    )?;
    writeln!(
        out,
        "{:<24}{:>16}{:>16}{:>16}{:>12}{:>12}",
        "factor", "analytic", "estimate", "std_error", "sigma", "truncated"
    )?;
    for (name, r) in rows {
        writeln!(
            out,
            "{:<24}{:>16}{:>16}{:>16}{:>12}{:>12}",
            name,
            csv_number(r.analytic_reference),
            csv_number(r.estimate),
            csv_number(r.standard_error),
            sig4(r.sigma_distance),
            sig4(r.truncation_fraction)
        )?;
    }
    Ok(())
}
