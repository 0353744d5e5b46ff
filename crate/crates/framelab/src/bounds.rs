//! Frame bounds.
//!
//! The optimal l2 bounds are the extreme eigenvalues of the frame operator
//! (squared scale: they bound the ratio of `sum |<x, x_j>|^2` to `||x||^2`).
//! The p-frame bounds are searched on the unit sphere and live on the
//! non-squared scale: they bound `(sum |<x, x_j>|^p)^(1/p)` against `||x||`,
//! so at p = 2 the searched bounds are the square roots of the eigenvalues.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};
use crate::frame::{inner, Field, Frame};
use crate::metric::pow_half_p;
use crate::rng::substream;
use crate::sphere::{descend_on_sphere, multistart_minimize, polish_on_sphere, random_unit};
use crate::stability::SearchConfig;

/// Lower l2 bound at or below this is reported as "not a frame".
pub const NOT_A_FRAME_FLOOR: f64 = 1e-12;

/// How the bounds were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundsMethod {
    /// Exact eigenvalues of the frame operator (squared scale).
    ExactEigen,
    /// Multistart sphere search (p-norm scale).
    Multistart,
    /// Exhaustive dimension-2 scan plus polish (p-norm scale).
    Grid,
}

/// Two-sided frame bounds for exponent p.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub p: f64,
    pub lower: f64,
    pub upper: f64,
    pub method: BoundsMethod,
}

impl FrameBounds {
    /// True when the lower bound certifies a spanning family. Meaningful
    /// for ExactEigen bounds, where lower = 0 signals rank deficiency.
    pub fn is_frame(&self) -> bool {
        self.lower > NOT_A_FRAME_FLOOR
    }
}

/// Full spectrum of the frame operator, eigenvalues ascending with unit
/// eigenvectors in matching order. Real frames take an all-real path so
/// their eigenvectors come back with exactly zero imaginary parts.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<Complex64>>,
}

pub fn frame_spectrum(frame: &Frame) -> Spectrum {
    let n = frame.dim();
    let mut pairs: Vec<(f64, Vec<Complex64>)> = match frame.field() {
        Field::Real => {
            let s = DMatrix::<f64>::from_fn(n, n, |b, a| {
                frame.vectors().iter().map(|v| v[b].re * v[a].re).sum()
            });
            let eig = s.symmetric_eigen();
            (0..n)
                .map(|i| {
                    let v = eig
                        .eigenvectors
                        .column(i)
                        .iter()
                        .map(|&x| Complex64::new(x, 0.0))
                        .collect();
                    (eig.eigenvalues[i], v)
                })
                .collect()
        }
        Field::Complex => {
            let eig = frame.frame_operator().symmetric_eigen();
            (0..n)
                .map(|i| {
                    let v = eig.eigenvectors.column(i).iter().copied().collect();
                    (eig.eigenvalues[i], v)
                })
                .collect()
        }
    };
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Spectrum {
        eigenvalues: pairs.iter().map(|(l, _)| *l).collect(),
        eigenvectors: pairs.into_iter().map(|(_, v)| v).collect(),
    }
}

/// Optimal l2 frame bounds: extreme eigenvalues of the frame operator.
/// Degenerate families are reported with lower = 0, not as errors.
pub fn frame_bounds_l2(frame: &Frame) -> FrameBounds {
    let spectrum = frame_spectrum(frame);
    FrameBounds {
        p: 2.0,
        lower: spectrum.eigenvalues[0].max(0.0),
        upper: *spectrum.eigenvalues.last().expect("dim >= 1"),
        method: BoundsMethod::ExactEigen,
    }
}

/// l2 bounds, rejecting families whose lower bound is numerically zero.
pub fn require_frame(frame: &Frame) -> Result<FrameBounds> {
    let bounds = frame_bounds_l2(frame);
    if !bounds.is_frame() {
        return Err(FrameError::NotAFrame(bounds.lower));
    }
    Ok(bounds)
}

/// `sum_j |<x, x_j>|^p`. Minimizing/maximizing this over the unit sphere
/// gives the p-frame bounds (after a 1/p root).
fn p_energy(frame: &Frame, p: f64, x: &[Complex64]) -> f64 {
    frame
        .vectors()
        .iter()
        .map(|v| pow_half_p(inner(x, v).norm_sqr(), p))
        .sum()
}

/// Gradient of `p_energy` in the convention `df = Re<h, grad>`:
/// `p * sum_j |c_j|^(p-2) c_j x_j`. Terms with |c_j| = 0 contribute the
/// zero subgradient.
fn p_energy_grad(frame: &Frame, p: f64, x: &[Complex64]) -> Vec<Complex64> {
    let mut g = vec![Complex64::new(0.0, 0.0); x.len()];
    for v in frame.vectors() {
        let c = inner(x, v);
        let s = c.norm_sqr();
        if s < 1e-300 {
            continue;
        }
        let w = p * pow_half_p(s, p - 2.0);
        for (gi, vi) in g.iter_mut().zip(v) {
            *gi += w * c * vi;
        }
    }
    g
}

/// Search starts shared by both p-bound directions: eigenvectors of the
/// frame operator (exact optimizers at p = 2), the normalized frame
/// vectors, the standard basis, and seeded random units.
fn p_search_starts(frame: &Frame, config: &SearchConfig, stream: u64) -> Vec<Vec<Complex64>> {
    let mut starts = frame_spectrum(frame).eigenvectors;
    for v in frame.vectors().iter().take(8) {
        if let Ok(u) = crate::frame::normalized(v) {
            starts.push(u);
        }
    }
    for i in 0..frame.dim() {
        let mut e = vec![Complex64::new(0.0, 0.0); frame.dim()];
        e[i] = Complex64::new(1.0, 0.0);
        starts.push(e);
    }
    let mut rng = substream(config.seed, stream);
    for _ in 0..config.restarts.max(1) {
        starts.push(random_unit(frame.dim(), frame.field(), &mut rng));
    }
    starts
}

/// Exhaustive scan over unit vectors of a dimension-2 space at the given
/// angular resolution. Returns the extreme `p_energy` points found.
#[allow(clippy::type_complexity)]
fn dim2_scan(frame: &Frame, p: f64, resolution: f64) -> ((f64, Vec<Complex64>), (f64, Vec<Complex64>)) {
    debug_assert_eq!(frame.dim(), 2);
    let mut min: (f64, Vec<Complex64>) = (f64::INFINITY, vec![]);
    let mut max: (f64, Vec<Complex64>) = (f64::NEG_INFINITY, vec![]);
    let mut consider = |value: f64, x: &dyn Fn() -> Vec<Complex64>| {
        if value < min.0 {
            min = (value, x());
        }
        if value > max.0 {
            max = (value, x());
        }
    };
    match frame.field() {
        Field::Real => {
            let steps = (std::f64::consts::PI / resolution).ceil() as usize;
            let rows: Vec<(f64, f64)> = frame
                .vectors()
                .iter()
                .map(|v| (v[0].re, v[1].re))
                .collect();
            for i in 0..steps {
                let theta = i as f64 * std::f64::consts::PI / steps as f64;
                let (sin, cos) = theta.sin_cos();
                let value: f64 = rows
                    .iter()
                    .map(|&(a, b)| {
                        let c = cos * a + sin * b;
                        pow_half_p(c * c, p)
                    })
                    .sum();
                consider(value, &|| {
                    vec![Complex64::new(cos, 0.0), Complex64::new(sin, 0.0)]
                });
            }
        }
        Field::Complex => {
            // |<x, v>|^2 for x = (cos a, e^{i phi} sin a) expands to
            // cos^2 a |v0|^2 + sin^2 a |v1|^2 + 2 cos a sin a Re(e^{i phi} v0 conj(v1)),
            // so the scan needs no per-vector trig inside the loops.
            let rows: Vec<(f64, f64, f64, f64)> = frame
                .vectors()
                .iter()
                .map(|v| {
                    let w = v[0] * v[1].conj();
                    (v[0].norm_sqr(), v[1].norm_sqr(), w.re, w.im)
                })
                .collect();
            let alpha_steps = (std::f64::consts::FRAC_PI_2 / resolution).ceil() as usize;
            let phi_steps = (std::f64::consts::TAU / resolution).ceil() as usize;
            for ai in 0..=alpha_steps {
                let alpha = ai as f64 * std::f64::consts::FRAC_PI_2 / alpha_steps as f64;
                let (sa, ca) = alpha.sin_cos();
                let (ca2, sa2, cross) = (ca * ca, sa * sa, 2.0 * ca * sa);
                for pi in 0..phi_steps {
                    let phi = pi as f64 * std::f64::consts::TAU / phi_steps as f64;
                    let (sp, cp) = phi.sin_cos();
                    let value: f64 = rows
                        .iter()
                        .map(|&(n0, n1, wr, wi)| {
                            let s = (ca2 * n0 + sa2 * n1 + cross * (wr * cp - wi * sp)).max(0.0);
                            pow_half_p(s, p)
                        })
                        .sum();
                    consider(value, &|| {
                        vec![
                            Complex64::new(ca, 0.0),
                            Complex64::from_polar(sa, phi),
                        ]
                    });
                }
            }
        }
    }
    (min, max)
}

/// Best minimizer of `p_energy` on the unit sphere: multistart descent,
/// plus the exhaustive scan when the dimension is 2. Returns the bound on
/// the p-norm scale together with the witness vector. Shared with the a0
/// estimator, which evaluates the same witness.
pub(crate) fn p_lower_search(
    frame: &Frame,
    p: f64,
    config: &SearchConfig,
) -> Result<(f64, Vec<Complex64>)> {
    if !(p >= 1.0) {
        return Err(FrameError::InvalidExponent(p));
    }
    let f = |x: &[Complex64]| p_energy(frame, p, x);
    let grad = |x: &[Complex64]| p_energy_grad(frame, p, x);
    let starts = p_search_starts(frame, config, 0xB0);
    let (mut value, mut point) =
        multistart_minimize(frame.field(), &f, &grad, &starts, config.max_iterations);
    if frame.dim() == 2 {
        let ((scan_value, scan_point), _) = dim2_scan(frame, p, config.grid_resolution);
        if scan_value < value {
            let (_, refined) = descend_on_sphere(
                frame.field(),
                &f,
                &grad,
                &scan_point,
                config.max_iterations,
            );
            (value, point) = polish_on_sphere(frame.field(), &f, &refined, 1e-2);
        }
    }
    Ok((value.max(0.0).powf(1.0 / p), point))
}

/// Best maximizer of `p_energy` on the unit sphere (same machinery as the
/// lower search on the negated objective).
pub(crate) fn p_upper_search(
    frame: &Frame,
    p: f64,
    config: &SearchConfig,
) -> Result<(f64, Vec<Complex64>)> {
    if !(p >= 1.0) {
        return Err(FrameError::InvalidExponent(p));
    }
    let f = |x: &[Complex64]| -p_energy(frame, p, x);
    let grad = |x: &[Complex64]| {
        let mut g = p_energy_grad(frame, p, x);
        for z in &mut g {
            *z = -*z;
        }
        g
    };
    let starts = p_search_starts(frame, config, 0xB1);
    let (mut value, mut point) =
        multistart_minimize(frame.field(), &f, &grad, &starts, config.max_iterations);
    if frame.dim() == 2 {
        let (_, (scan_value, scan_point)) = dim2_scan(frame, p, config.grid_resolution);
        if -scan_value < value {
            let (_, refined) = descend_on_sphere(
                frame.field(),
                &f,
                &grad,
                &scan_point,
                config.max_iterations,
            );
            (value, point) = polish_on_sphere(frame.field(), &f, &refined, 1e-2);
        }
    }
    Ok(((-value).max(0.0).powf(1.0 / p), point))
}

/// Searched p-frame bounds over the unit sphere (p-norm scale).
///
/// The returned lower bound is the search minimum, hence an upper estimate
/// of the true infimum; symmetrically the returned upper bound is a lower
/// estimate of the true supremum. At p = 2 the eigenvector starts make the
/// search exact up to eigensolver precision.
pub fn p_frame_bounds(frame: &Frame, p: f64, config: &SearchConfig) -> Result<FrameBounds> {
    let (lower, _) = p_lower_search(frame, p, config)?;
    let (upper, _) = p_upper_search(frame, p, config)?;
    let method = if frame.dim() == 2 {
        BoundsMethod::Grid
    } else {
        BoundsMethod::Multistart
    };
    Ok(FrameBounds { p, lower, upper, method })
}
