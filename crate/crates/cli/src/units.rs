//! Unit-suffix parsing for config values and sweep bounds.
//!
//! A quantity is a decimal number followed by an optional suffix, with or
//! without a space: `15 um`, `266nm`, `0.05`. A bare number is taken as the
//! SI base unit of the dimension the key expects.

use std::fmt;

use tl_align_core::constants::ATOMIC_MASS;

/// Physical dimension a config key expects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Mass,
    Length,
    Velocity,
    Angle,
    Frequency,
    Power,
    Time,
    /// Dimensionless or SI-fixed quantities: no suffix allowed.
    Bare,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dimension::Mass => "a mass (u, kDa or bare kg)",
            Dimension::Length => "a length (fm, nm, um, mm or bare m)",
            Dimension::Velocity => "a velocity (m/s or bare)",
            Dimension::Angle => "an angle (urad, mrad, deg, rad or bare rad)",
            Dimension::Frequency => "a frequency (Hz, MHz or bare)",
            Dimension::Power => "a power (W or bare)",
            Dimension::Time => "a time (s or bare)",
            Dimension::Bare => "a bare number",
        })
    }
}

/// How a suffix rescales the number in front of it. Decimal prefixes shift
/// the decimal exponent before conversion, so `15 um` resolves to exactly
/// the same bits as a bare `15e-6`.
#[derive(Debug, Clone, Copy)]
enum Scale {
    Pow10(i32),
    Factor(f64),
}

const SUFFIXES: &[(&str, Dimension, Scale)] = &[
    ("fm", Dimension::Length, Scale::Pow10(-15)),
    ("nm", Dimension::Length, Scale::Pow10(-9)),
    ("um", Dimension::Length, Scale::Pow10(-6)),
    ("µm", Dimension::Length, Scale::Pow10(-6)),
    ("mm", Dimension::Length, Scale::Pow10(-3)),
    ("m", Dimension::Length, Scale::Pow10(0)),
    ("m/s", Dimension::Velocity, Scale::Pow10(0)),
    ("Hz", Dimension::Frequency, Scale::Pow10(0)),
    ("MHz", Dimension::Frequency, Scale::Pow10(6)),
    ("u", Dimension::Mass, Scale::Factor(ATOMIC_MASS)),
    ("kDa", Dimension::Mass, Scale::Factor(1e3 * ATOMIC_MASS)),
    ("W", Dimension::Power, Scale::Pow10(0)),
    ("urad", Dimension::Angle, Scale::Pow10(-6)),
    ("µrad", Dimension::Angle, Scale::Pow10(-6)),
    ("mrad", Dimension::Angle, Scale::Pow10(-3)),
    ("rad", Dimension::Angle, Scale::Pow10(0)),
    ("deg", Dimension::Angle, Scale::Factor(std::f64::consts::PI / 180.0)),
    ("s", Dimension::Time, Scale::Pow10(0)),
];

/// Splits `15 um` into the numeric text and the suffix text.
fn split(text: &str) -> (&str, &str) {
    let number_len = text
        .find(|c: char| !matches!(c, '0'..='9' | '+' | '-' | '.' | 'e' | 'E'))
        .unwrap_or(text.len());
    let (number, rest) = text.split_at(number_len);
    (number, rest.trim())
}

fn shifted(number: &str, shift: i32) -> Option<f64> {
    let (mantissa, exponent) = match number.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (number, 0),
    };
    format!("{mantissa}e{}", exponent.checked_add(shift)?).parse().ok()
}

/// Parses a quantity in the expected dimension, resolving it to SI.
pub fn parse_quantity(text: &str, expected: Dimension) -> Result<f64, String> {
    let text = text.trim();
    let (number, suffix) = split(text);
    let value: f64 = number
        .parse()
        .map_err(|_| format!("malformed number `{text}`"))?;
    let resolved = if suffix.is_empty() {
        value
    } else {
        match SUFFIXES.iter().find(|(name, _, _)| *name == suffix) {
            None => return Err(format!("unknown unit `{suffix}`")),
            Some((_, dim, _)) if *dim != expected || expected == Dimension::Bare => {
                return Err(format!(
                    "unit `{suffix}` does not fit a key expecting {expected}"
                ))
            }
            Some((_, _, Scale::Factor(factor))) => value * factor,
            Some((_, _, Scale::Pow10(shift))) => shifted(number, *shift)
                .ok_or_else(|| format!("malformed number `{text}`"))?,
        }
    };
    if !resolved.is_finite() {
        return Err(format!("number `{text}` out of range"));
    }
    Ok(resolved)
}

/// Parses a non-negative integer count, also accepting scientific notation
/// for round values such as `1e6`.
pub fn parse_count(text: &str) -> Result<u64, String> {
    let text = text.trim();
    if let Ok(n) = text.parse::<u64>() {
        return Ok(n);
    }
    match text.parse::<f64>() {
        Ok(x) if x >= 0.0 && x <= 2f64.powi(53) && x.fract() == 0.0 => Ok(x as u64),
        _ => Err(format!("malformed count `{text}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_the_suffix_table() {
        assert_eq!(parse_quantity("266 nm", Dimension::Length).unwrap(), 266e-9);
        assert_eq!(parse_quantity("15um", Dimension::Length).unwrap(), 15e-6);
        assert_eq!(parse_quantity("15 µm", Dimension::Length).unwrap(), 15e-6);
        assert_eq!(parse_quantity("40 fm", Dimension::Length).unwrap(), 40e-15);
        assert_eq!(parse_quantity("1.5 mm", Dimension::Length).unwrap(), 1.5e-3);
        assert_eq!(parse_quantity("1 m", Dimension::Length).unwrap(), 1.0);
        assert_eq!(parse_quantity("100 m/s", Dimension::Velocity).unwrap(), 100.0);
        assert_eq!(parse_quantity("20 MHz", Dimension::Frequency).unwrap(), 20e6);
        assert_eq!(parse_quantity("90 Hz", Dimension::Frequency).unwrap(), 90.0);
        assert_eq!(
            parse_quantity("100 kDa", Dimension::Mass).unwrap(),
            1e5 * ATOMIC_MASS
        );
        assert_eq!(parse_quantity("1e5 u", Dimension::Mass).unwrap(), 1e5 * ATOMIC_MASS);
        assert_eq!(parse_quantity("1 W", Dimension::Power).unwrap(), 1.0);
        assert_eq!(parse_quantity("0.02 mrad", Dimension::Angle).unwrap(), 0.02e-3);
        assert_eq!(parse_quantity("49.5 urad", Dimension::Angle).unwrap(), 49.5e-6);
        assert_eq!(
            parse_quantity("48 deg", Dimension::Angle).unwrap(),
            48.0 * (std::f64::consts::PI / 180.0)
        );
        assert_eq!(parse_quantity("2 s", Dimension::Time).unwrap(), 2.0);
    }

    #[test]
    fn bare_numbers_are_si() {
        assert_eq!(parse_quantity("9.81", Dimension::Bare).unwrap(), 9.81);
        assert_eq!(parse_quantity("7.2e-5", Dimension::Bare).unwrap(), 7.2e-5);
        assert_eq!(parse_quantity("-5e-4", Dimension::Angle).unwrap(), -5e-4);
        assert_eq!(parse_quantity("1e-3", Dimension::Length).unwrap(), 1e-3);
    }

    #[test]
    fn rejects_mismatched_dimensions() {
        assert!(parse_quantity("15 mrad", Dimension::Length).is_err());
        assert!(parse_quantity("1 m", Dimension::Angle).is_err());
        assert!(parse_quantity("9.81 W", Dimension::Bare).is_err());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_quantity("fast", Dimension::Velocity).is_err());
        assert!(parse_quantity("12 parsec", Dimension::Length).is_err());
        assert!(parse_quantity("1.2.3 m", Dimension::Length).is_err());
        assert!(parse_quantity("5e", Dimension::Bare).is_err());
        assert!(parse_quantity("", Dimension::Bare).is_err());
    }

    #[test]
    fn counts_accept_plain_and_scientific_forms() {
        assert_eq!(parse_count("1000000").unwrap(), 1_000_000);
        assert_eq!(parse_count("1e6").unwrap(), 1_000_000);
        assert_eq!(parse_count("65536").unwrap(), 65_536);
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
        assert!(parse_count("many").is_err());
    }
}
