//! Fringe-visibility extraction from third-grating position scans.

use crate::{Error, Real, Result};

/// Result of fitting `S(x) = mean * (1 + V sin(2 pi x / d + phase))` to a
/// position scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityFit<T> {
    /// Fitted fringe visibility, clamped to [0, 1].
    pub visibility: T,
    /// Fitted fringe phase in rad.
    pub phase: T,
    /// Fitted mean signal.
    pub mean: T,
    /// Plain `(max - min) / (max + min)` of the raw counts, for comparison.
    pub raw: T,
}

/// Least-squares fit of a single sinusoid of known period to `(position,
/// counts)` samples.
///
/// The model is linear in `(mean, mean*V*cos(phase), mean*V*sin(phase))`, so
/// the fit reduces to a 3x3 normal system. Requires at least 8 samples
/// covering a full period, non-negative counts, and a signal that is not
/// identically zero.
pub fn visibility_from_scan<T: Real>(scan: &[(T, T)], period: T) -> Result<VisibilityFit<T>> {
    if !(period > T::zero()) {
        return Err(Error::input(format!("period must be positive, got {period}")));
    }
    if scan.len() < 8 {
        return Err(Error::input(format!(
            "need at least 8 scan samples, got {}",
            scan.len()
        )));
    }
    let mut min_x = T::infinity();
    let mut max_x = -T::infinity();
    let mut any_positive = false;
    for &(x, y) in scan {
        if !(y >= T::zero()) {
            return Err(Error::input(format!("negative counts {y} at position {x}")));
        }
        if y > T::zero() {
            any_positive = true;
        }
        min_x = min_x.min(x);
        max_x = max_x.max(x);
    }
    if !any_positive {
        return Err(Error::input("scan counts are identically zero"));
    }
    if max_x - min_x < period {
        return Err(Error::input(format!(
            "scan spans {} but must cover one full period {period}",
            max_x - min_x
        )));
    }

    let k = T::of(2.0) * T::PI() / period;
    // normal equations for y = a0 + a1 sin(kx) + a2 cos(kx)
    let mut m = [[T::zero(); 3]; 3];
    let mut rhs = [T::zero(); 3];
    for &(x, y) in scan {
        let basis = [T::one(), (k * x).sin(), (k * x).cos()];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = m[i][j] + basis[i] * basis[j];
            }
            rhs[i] = rhs[i] + basis[i] * y;
        }
    }
    let [a0, a1, a2] = solve3(m, rhs)?;

    if !(a0 > T::zero()) {
        return Err(Error::input("fitted mean signal is not positive"));
    }
    let amplitude = (a1 * a1 + a2 * a2).sqrt();
    let visibility = (amplitude / a0).min(T::one());
    let (mut min_y, mut max_y) = (T::infinity(), -T::infinity());
    for &(_, y) in scan {
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    Ok(VisibilityFit {
        visibility,
        phase: a2.atan2(a1),
        mean: a0,
        raw: (max_y - min_y) / (max_y + min_y),
    })
}

/// 3x3 linear solve by Gaussian elimination with partial pivoting.
fn solve3<T: Real>(mut m: [[T; 3]; 3], mut b: [T; 3]) -> Result<[T; 3]> {
    for col in 0..3 {
        let pivot_row = (col..3)
            .max_by(|&i, &j| {
                m[i][col]
                    .abs()
                    .partial_cmp(&m[j][col].abs())
                    .expect("finite pivots")
            })
            .expect("non-empty range");
        if m[pivot_row][col].abs() < T::of(1e-12) {
            return Err(Error::input("degenerate scan geometry: singular fit system"));
        }
        m.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in (col + 1)..3 {
            let factor = m[row][col] / m[col][col];
            for j in col..3 {
                m[row][j] = m[row][j] - factor * m[col][j];
            }
            b[row] = b[row] - factor * b[col];
        }
    }
    let mut x = [T::zero(); 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for j in (row + 1)..3 {
            acc = acc - m[row][j] * x[j];
        }
        x[row] = acc / m[row][row];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const D: f64 = 133e-9;

    fn synthetic(v: f64, phase: f64, mean: f64, n: usize) -> Vec<(f64, f64)> {
        (0..n)
            .map(|i| {
                let x = 2.0 * D * i as f64 / n as f64;
                let s = mean * (1.0 + v * (2.0 * std::f64::consts::PI * x / D + phase).sin());
                (x, s)
            })
            .collect()
    }

    #[test]
    fn recovers_noiseless_parameters() {
        for &v in &[0.0, 0.25, 0.5, 0.75, 1.0] {
            let scan = synthetic(v, 0.7, 120.0, 50);
            let fit = visibility_from_scan(&scan, D).unwrap();
            assert_relative_eq!(fit.visibility, v, epsilon = 1e-6);
            assert_relative_eq!(fit.mean, 120.0, max_relative = 1e-9);
            if v > 0.0 {
                assert_relative_eq!(fit.phase, 0.7, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn constant_scan_has_zero_visibility() {
        let scan: Vec<_> = (0..16).map(|i| (i as f64 * D / 4.0, 100.0)).collect();
        let fit = visibility_from_scan(&scan, D).unwrap();
        assert!(fit.visibility < 1e-12);
        assert_eq!(fit.raw, 0.0);
        assert_relative_eq!(fit.mean, 100.0, max_relative = 1e-12);
    }

    #[test]
    fn raw_estimate_tracks_fit_on_dense_scans() {
        let scan = synthetic(0.5, 0.0, 100.0, 200);
        let fit = visibility_from_scan(&scan, D).unwrap();
        assert_relative_eq!(fit.raw, 0.5, max_relative = 1e-3);
        assert!(fit.raw <= fit.visibility + 1e-3);
    }

    #[test]
    fn rejects_degenerate_scans() {
        // too few samples
        let short = synthetic(0.5, 0.0, 100.0, 7);
        assert!(visibility_from_scan(&short, D).is_err());
        // less than one period of coverage
        let narrow: Vec<_> = (0..10).map(|i| (i as f64 * D / 20.0, 100.0)).collect();
        assert!(visibility_from_scan(&narrow, D).is_err());
        // identically zero
        let dark: Vec<_> = (0..10).map(|i| (i as f64 * D / 4.0, 0.0)).collect();
        assert!(visibility_from_scan(&dark, D).is_err());
        // negative counts
        let mut bad = synthetic(0.5, 0.0, 100.0, 16);
        bad[3].1 = -1.0;
        assert!(visibility_from_scan(&bad, D).is_err());
        // bad period
        assert!(visibility_from_scan(&synthetic(0.5, 0.0, 100.0, 16), 0.0).is_err());
    }

    #[test]
    fn all_samples_at_same_position_is_singular() {
        let scan: Vec<_> = (0..10)
            .map(|i| (if i == 0 { 0.0 } else { 2.0 * D }, 100.0))
            .collect();
        // spans 2 periods but only two distinct abscissas: the sinusoid is
        // not identifiable
        assert!(visibility_from_scan(&scan, D).is_err());
    }
}
