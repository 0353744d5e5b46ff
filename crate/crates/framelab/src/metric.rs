//! Distances that quotient out the unimodular phase, and measurement gaps.

use num_complex::Complex64;

use crate::error::{FrameError, Result};
use crate::frame::{add_scaled, inner, norm, norm_sq, Field, Frame};

/// Distance between x and y modulo a unimodular scalar:
/// `min over |lambda| = 1 of ||x - lambda y||`.
///
/// Over the reals the scalars are just {-1, +1}. Over the complexes the
/// minimizing phase aligns `<x, y>` with the positive axis, which gives the
/// closed form `sqrt(||x||^2 + ||y||^2 - 2 |<x, y>|)`. Both formulas agree
/// on real input.
pub fn min_phase_distance(field: Field, x: &[Complex64], y: &[Complex64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    match field {
        Field::Real => {
            let minus = norm(&add_scaled(x, y, Complex64::new(-1.0, 0.0)));
            let plus = norm(&add_scaled(x, y, Complex64::new(1.0, 0.0)));
            minus.min(plus)
        }
        Field::Complex => {
            let d2 = norm_sq(x) + norm_sq(y) - 2.0 * inner(x, y).norm();
            // Cancellation can push the exact-zero case slightly negative.
            d2.max(0.0).sqrt()
        }
    }
}

/// `s^(p/2)` for `s >= 0`, using integer powers when `p` is a small even
/// integer. Search hot loops work with squared magnitudes, and `powf`
/// costs an order of magnitude more than multiplication.
#[inline]
pub(crate) fn pow_half_p(s: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else if p == 2.0 {
        s
    } else if p == 4.0 {
        s * s
    } else if p == 6.0 {
        s * s * s
    } else {
        s.powf(0.5 * p)
    }
}

/// The l^p norm of a slice of nonnegative gap values.
pub fn lp_norm(values: &[f64], p: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    // Factoring out the max keeps the powers in range for large p.
    let peak = values.iter().cloned().fold(0.0f64, f64::max);
    if peak == 0.0 {
        return 0.0;
    }
    let sum: f64 = values.iter().map(|v| (v / peak).powf(p)).sum();
    peak * sum.powf(1.0 / p)
}

/// Gap between the measurement magnitudes of x and y:
/// `( sum_j | |<x, x_j>| - |<y, x_j>| |^p )^(1/p)`.
pub fn magnitude_gap(frame: &Frame, x: &[Complex64], y: &[Complex64], p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(FrameError::InvalidExponent(p));
    }
    let cx = frame.analyze_magnitudes(x)?;
    let cy = frame.analyze_magnitudes(y)?;
    let gaps: Vec<f64> = cx.iter().zip(&cy).map(|(a, b)| (a - b).abs()).collect();
    Ok(lp_norm(&gaps, p))
}

/// Ratio `magnitude_gap / min_phase_distance` whose infimum over pairs that
/// are not phase-equal is the reciprocal of the stability constant.
pub fn stability_ratio(frame: &Frame, x: &[Complex64], y: &[Complex64], p: f64) -> Result<f64> {
    let dist = min_phase_distance(frame.field(), x, y);
    if dist < crate::tol::ZERO_NORM_SQ.sqrt() {
        return Err(FrameError::ZeroPhaseDistance);
    }
    Ok(magnitude_gap(frame, x, y, p)? / dist)
}
