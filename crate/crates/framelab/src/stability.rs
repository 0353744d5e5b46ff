//! Stability constants for phase retrieval.
//!
//! The central quantity is the ratio `magnitude_gap / min_phase_distance`
//! over pairs of vectors; its infimum is 1/C, where C is the stability
//! constant of the frame. This module provides seeded pair samplers, a
//! multistart estimator for C in any dimension, and an estimator for the
//! quartic stability constant a0 behind the l4 results.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};
use crate::frame::{add_scaled, inner, norm_sq, normalized, scaled, Field, VectorPair};
use crate::sphere::random_unit;

pub use crate::grid2d::grid_certified_stability_2d;

/// Witness ratios below this mark a frame as failing phase retrieval:
/// the stability constant is reported as infinite (`c_estimate = None`).
pub const PR_FAILURE_RATIO: f64 = 1e-10;

/// How a stability or a0 report was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StabilityMethod {
    /// Certified branch-and-bound over the dimension-2 orthogonal-pair
    /// parametrization.
    Grid2D,
    /// Multistart subgradient search (any dimension); estimates only.
    Multistart,
}

/// Witnesses serialize in the frame-file vector encoding ([re, im] pairs).
fn serialize_pair<S: serde::Serializer>(pair: &VectorPair, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Encoded {
        x: Vec<[f64; 2]>,
        y: Vec<[f64; 2]>,
    }
    let enc = |v: &[Complex64]| v.iter().map(|z| [z.re, z.im]).collect();
    Encoded { x: enc(&pair.x), y: enc(&pair.y) }.serialize(s)
}

/// Result of a stability-constant search.
///
/// `min_ratio` is the smallest ratio `magnitude_gap / min_phase_distance`
/// found over orthogonal pairs; `c_estimate = 1 / min_ratio` when the
/// ratio is meaningfully positive, and `None` (the infinite marker) when
/// `min_ratio < 1e-10`, i.e. the frame numerically fails phase retrieval
/// on the witness. Searched estimates can only under-estimate the true C;
/// a certified Grid2D report additionally brackets the true orthogonal
/// infimum in `[certified_lower_ratio, min_ratio]`.
#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub p: f64,
    /// 1 / min_ratio, or None when phase retrieval fails on the witness.
    pub c_estimate: Option<f64>,
    #[serde(serialize_with = "serialize_pair")]
    pub witness: VectorPair,
    pub min_ratio: f64,
    pub method: StabilityMethod,
    pub seed: u64,
    pub restarts: usize,
    /// Grid2D: requested relative certificate width. Multistart: the
    /// angular resolution of the auxiliary dimension-2 scan.
    pub grid_resolution: f64,
    /// True only for Grid2D runs that converged to the stated resolution
    /// or exhibited a failure witness below the zero floor.
    pub certified: bool,
    /// Certified lower bound on the orthogonal-pair ratio infimum
    /// (Grid2D only).
    pub certified_lower_ratio: Option<f64>,
    /// The witness has a zero member (dimension-1 pairs degenerate to
    /// (x, 0); such pairs test norm recovery only).
    pub degenerate_witness: bool,
}

impl StabilityReport {
    pub fn fails_phase_retrieval(&self) -> bool {
        self.c_estimate.is_none()
    }
}

/// Result of an a0 search: the minimum found of the quartic ratio
/// `sum_j (|<x,x_j>|^2 - |<y,x_j>|^2)^2 / D(x, y)` with
/// `D = (||x||^2 + ||y||^2)^2 - 4 |<x,y>|^2`. A sample minimum, hence an
/// upper estimate of the true a0.
#[derive(Debug, Clone, Serialize)]
pub struct A0Report {
    pub a0_estimate: f64,
    #[serde(serialize_with = "serialize_pair")]
    pub witness: VectorPair,
    pub method: StabilityMethod,
    pub seed: u64,
    pub restarts: usize,
}

/// Knobs for the randomized searches. Every estimator records the config
/// it ran with, so results are replayable.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    /// Independent descent starts. At least 1.
    pub restarts: usize,
    /// Iteration cap per descent.
    pub max_iterations: usize,
    /// Subgradient schedule scale: step at iteration t is initial_step/sqrt(t).
    pub initial_step: f64,
    /// Angular step (radians) of the exhaustive scans used as extra starts
    /// when the dimension is 2.
    pub grid_resolution: f64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 128,
            max_iterations: 400,
            initial_step: 0.3,
            grid_resolution: 1e-3,
            seed: 0,
        }
    }
}

impl SearchConfig {
    /// Default for p-frame bound searches, which are better conditioned
    /// than the pair searches and need fewer restarts.
    pub fn p_bounds_default() -> Self {
        SearchConfig {
            restarts: 64,
            ..SearchConfig::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(FrameError::NonPositive { name: "restarts", value: self.restarts as f64 });
        }
        if !(self.grid_resolution > 0.0) {
            return Err(FrameError::NonPositive {
                name: "grid_resolution",
                value: self.grid_resolution,
            });
        }
        Ok(())
    }
}

/// Sample a pair (x, y) with `<x, y> = 0`, `||x||^2 = scale_split`, and
/// `||y||^2 = 1 - scale_split`. In dimension 1 the only orthogonal partner
/// is zero, so the pair degenerates to (unit x, 0) regardless of the split.
pub fn sample_orthogonal_pair(
    dim: usize,
    field: Field,
    scale_split: f64,
    rng: &mut impl Rng,
) -> Result<VectorPair> {
    if dim == 0 {
        return Err(FrameError::ZeroDimension);
    }
    if !(0.0..=1.0).contains(&scale_split) {
        return Err(FrameError::InvalidSplit(scale_split));
    }
    if dim == 1 {
        let x = random_unit(1, field, rng);
        return VectorPair::new(x, vec![Complex64::new(0.0, 0.0)]);
    }
    let u = random_unit(dim, field, rng);
    let v = loop {
        let v0 = random_unit(dim, field, rng);
        let w = add_scaled(&v0, &u, -inner(&v0, &u));
        if norm_sq(&w) > 1e-8 {
            break normalized(&w)?;
        }
    };
    let x = scaled(&u, Complex64::new(scale_split.sqrt(), 0.0));
    let y = scaled(&v, Complex64::new((1.0 - scale_split).sqrt(), 0.0));
    VectorPair::new(x, y)
}

/// Sample an unconstrained pair with `||x||^2 + ||y||^2 = 1`, rejecting
/// pairs that are phase-equal to working precision (the stability ratio is
/// undefined there).
pub fn sample_general_pair(dim: usize, field: Field, rng: &mut impl Rng) -> Result<VectorPair> {
    if dim == 0 {
        return Err(FrameError::ZeroDimension);
    }
    loop {
        let x0 = random_unit(dim, field, rng);
        let y0 = random_unit(dim, field, rng);
        // Random relative scale, then joint normalization.
        let t: f64 = rng.random::<f64>();
        let x = scaled(&x0, Complex64::new((1.0 - t).sqrt(), 0.0));
        let y = scaled(&y0, Complex64::new(t.sqrt(), 0.0));
        if crate::metric::min_phase_distance(field, &x, &y) > 1e-10 {
            return VectorPair::new(x, y);
        }
    }
}

/// Re-impose `<x, y> = 0` and `||x||^2 + ||y||^2 = 1` on a drifted pair.
/// Pairs whose x collapses are rejected; a collapsing y degenerates to the
/// valid pair (unit x, 0).
fn project_orthogonal(pair: &VectorPair) -> Option<VectorPair> {
    let nx = norm_sq(&pair.x);
    if nx <= crate::tol::ZERO_NORM_SQ {
        return None;
    }
    let y = add_scaled(&pair.y, &pair.x, -inner(&pair.y, &pair.x) / nx);
    let total = nx + norm_sq(&y);
    let s = Complex64::new(1.0 / total.sqrt(), 0.0);
    let pair = VectorPair::new(
        scaled(&pair.x, s),
        y.iter().map(|z| z * s).collect(),
    )
    .expect("projection preserves dimensions");
    Some(pair)
}

/// Stability ratio of a pair, or +inf where it is undefined (phase-equal
/// pairs are skipped, not errors, during search).
fn ratio_or_inf(frame: &crate::frame::Frame, pair: &VectorPair, p: f64) -> f64 {
    crate::metric::stability_ratio(frame, &pair.x, &pair.y, p).unwrap_or(f64::INFINITY)
}

/// One subgradient of the magnitude gap in (x, y), in the convention
/// `df = Re<h, g>`. At kinks (a zero analysis coefficient or a zero gap
/// term) any subgradient member works; zero is chosen.
fn gap_subgradient(
    frame: &crate::frame::Frame,
    pair: &VectorPair,
    p: f64,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let cx = frame.analyze(&pair.x).expect("validated pair");
    let cy = frame.analyze(&pair.y).expect("validated pair");
    let n = frame.dim();
    let mut gx = vec![Complex64::new(0.0, 0.0); n];
    let mut gy = vec![Complex64::new(0.0, 0.0); n];
    for (j, v) in frame.vectors().iter().enumerate() {
        let (ax, ay) = (cx[j].norm(), cy[j].norm());
        let d = ax - ay;
        if d == 0.0 {
            continue;
        }
        let weight = p * d.abs().powf(p - 1.0) * d.signum();
        if ax > 1e-150 {
            let phase = cx[j] / ax;
            for (g, vi) in gx.iter_mut().zip(v) {
                *g += weight * phase * vi;
            }
        }
        if ay > 1e-150 {
            let phase = cy[j] / ay;
            for (g, vi) in gy.iter_mut().zip(v) {
                *g -= weight * phase * vi;
            }
        }
    }
    if frame.field().is_real() {
        for g in gx.iter_mut().chain(gy.iter_mut()) {
            g.im = 0.0;
        }
    }
    (gx, gy)
}

/// Deterministic coordinate polish of a stability witness: probe each real
/// degree of freedom, re-project onto the orthogonal manifold, keep
/// improvements. The step walks down to the deep floor so that failure
/// witnesses reach ratios below the 1e-10 threshold.
fn polish_pair(
    frame: &crate::frame::Frame,
    p: f64,
    start: &VectorPair,
    initial_step: f64,
) -> (f64, VectorPair) {
    let mut pair = start.clone();
    let mut best = ratio_or_inf(frame, &pair, p);
    let complex = !frame.field().is_real();
    let n = frame.dim();
    let mut h = initial_step;
    while h > crate::tol::DEEP_POLISH_FLOOR {
        let mut improved = false;
        for slot in 0..2 * n {
            for part in 0..if complex { 2 } else { 1 } {
                for sign in [1.0, -1.0] {
                    let mut trial = pair.clone();
                    let target = if slot < n {
                        &mut trial.x[slot]
                    } else {
                        &mut trial.y[slot - n]
                    };
                    if part == 0 {
                        target.re += sign * h;
                    } else {
                        target.im += sign * h;
                    }
                    let Some(projected) = project_orthogonal(&trial) else {
                        continue;
                    };
                    let value = ratio_or_inf(frame, &projected, p);
                    if value < best {
                        best = value;
                        pair = projected;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (best, pair)
}

/// The dimension-2 orthogonal pair at manifold coordinates (alpha, phi,
/// gamma); phi is ignored for Real frames.
fn pair_from_angles(field: Field, alpha: f64, phi: f64, gamma: f64) -> VectorPair {
    let (sa, ca) = alpha.sin_cos();
    let (sg, cg) = gamma.sin_cos();
    let (u, u_perp) = match field {
        Field::Real => (
            vec![Complex64::new(ca, 0.0), Complex64::new(sa, 0.0)],
            vec![Complex64::new(-sa, 0.0), Complex64::new(ca, 0.0)],
        ),
        Field::Complex => (
            vec![Complex64::new(ca, 0.0), Complex64::from_polar(sa, phi)],
            vec![Complex64::from_polar(-sa, -phi), Complex64::new(ca, 0.0)],
        ),
    };
    VectorPair::new(
        u.iter().map(|z| z * cg).collect(),
        u_perp.iter().map(|z| z * sg).collect(),
    )
    .expect("matched dims")
}

/// Orthogonal starting pairs shared by the multistart search: extreme
/// eigenvector pairs and their sum/difference combinations (these hit the
/// classical failure witnesses), the degenerate (lowest eigenvector, 0)
/// pair, and a coarse manifold lattice when the dimension is 2.
fn structured_starts(frame: &crate::frame::Frame) -> Vec<VectorPair> {
    let n = frame.dim();
    let spectrum = crate::bounds::frame_spectrum(frame);
    let zero = vec![Complex64::new(0.0, 0.0); n];
    let mut basis_like: Vec<Vec<Complex64>> = spectrum.eigenvectors.clone();
    for i in 0..n {
        let mut e = zero.clone();
        e[i] = Complex64::new(1.0, 0.0);
        basis_like.push(e);
    }
    let mut starts = Vec::new();
    let half = Complex64::new(0.5f64.sqrt(), 0.0);
    'outer: for i in 0..basis_like.len() {
        for j in (i + 1)..basis_like.len() {
            if starts.len() >= 48 {
                break 'outer;
            }
            starts.push(
                VectorPair::new(scaled(&basis_like[i], half), scaled(&basis_like[j], half))
                    .expect("same dim"),
            );
            let sum = add_scaled(&basis_like[i], &basis_like[j], Complex64::new(1.0, 0.0));
            let diff = add_scaled(&basis_like[i], &basis_like[j], Complex64::new(-1.0, 0.0));
            let quarter = Complex64::new(0.5, 0.0);
            starts.push(
                VectorPair::new(scaled(&sum, quarter), scaled(&diff, quarter)).expect("same dim"),
            );
        }
    }
    starts.push(VectorPair::new(spectrum.eigenvectors[0].clone(), zero).expect("same dim"));
    if frame.dim() == 2 {
        let phis: usize = if frame.field().is_real() { 1 } else { 24 };
        let alphas = if frame.field().is_real() { 32 } else { 16 };
        for ia in 0..alphas {
            let a_max = if frame.field().is_real() {
                std::f64::consts::PI
            } else {
                std::f64::consts::FRAC_PI_2
            };
            let alpha = (ia as f64 + 0.5) / alphas as f64 * a_max;
            for ip in 0..phis {
                let phi = ip as f64 / phis as f64 * std::f64::consts::TAU;
                for ig in 0..12 {
                    let gamma = (ig as f64 + 0.5) / 12.0 * std::f64::consts::FRAC_PI_2;
                    starts.push(pair_from_angles(frame.field(), alpha, phi, gamma));
                }
            }
        }
    }
    starts
}

/// Estimate the stability constant C of a frame in the p-norm by
/// minimizing the stability ratio over orthogonal pairs.
///
/// Projected subgradient descent from `config.restarts` random orthogonal
/// pairs plus structured starts; the best witness is polished. Because the
/// minimum is taken over a searched sample, `min_ratio` can only
/// over-estimate the true infimum, so `c_estimate` is a lower bound on the
/// true C. A `min_ratio` below 1e-10 means phase retrieval numerically
/// fails on the witness and `c_estimate` is `None`.
pub fn estimate_stability_constant(
    frame: &crate::frame::Frame,
    p: f64,
    config: &SearchConfig,
) -> Result<StabilityReport> {
    if !(p >= 1.0) {
        return Err(FrameError::InvalidExponent(p));
    }
    config.validate()?;
    crate::bounds::require_frame(frame)?;

    let mut best_value = f64::INFINITY;
    let mut best_pair: Option<VectorPair> = None;
    fn consider(value: f64, pair: VectorPair, best_value: &mut f64, best_pair: &mut Option<VectorPair>) {
        if value < *best_value {
            *best_value = value;
            *best_pair = Some(pair);
        }
    }

    let structured = structured_starts(frame);
    // Structured starts are projected onto the orthogonal manifold (the
    // combination pairs are only orthogonal up to eigensolver precision)
    // and evaluated directly; their values back the structural guarantees.
    // The most promising ones are also descended.
    let mut ranked: Vec<(f64, usize)> = Vec::with_capacity(structured.len());
    for (i, pair) in structured.iter().enumerate() {
        let Some(projected) = project_orthogonal(pair) else {
            continue;
        };
        let value = ratio_or_inf(frame, &projected, p);
        ranked.push((value, i));
        consider(value, projected, &mut best_value, &mut best_pair);
    }
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut rng = crate::rng::substream(config.seed, 0xC0);
    let mut descend_starts: Vec<VectorPair> = ranked
        .iter()
        .take(8)
        .map(|&(_, i)| structured[i].clone())
        .collect();
    for _ in 0..config.restarts {
        let split = rng.random::<f64>();
        descend_starts.push(sample_orthogonal_pair(frame.dim(), frame.field(), split, &mut rng)?);
    }

    for start in &descend_starts {
        let Some(mut pair) = project_orthogonal(start) else {
            continue;
        };
        let mut value = ratio_or_inf(frame, &pair, p);
        consider(value, pair.clone(), &mut best_value, &mut best_pair);
        for t in 1..=config.max_iterations {
            let (gx, gy) = gap_subgradient(frame, &pair, p);
            let gnorm = (norm_sq(&gx) + norm_sq(&gy)).sqrt();
            if gnorm < 1e-14 {
                break;
            }
            let step = config.initial_step / (t as f64).sqrt() / gnorm;
            let moved = VectorPair::new(
                add_scaled(&pair.x, &gx, Complex64::new(-step, 0.0)),
                add_scaled(&pair.y, &gy, Complex64::new(-step, 0.0)),
            )
            .expect("same dim");
            let Some(next) = project_orthogonal(&moved) else {
                break;
            };
            pair = next;
            value = ratio_or_inf(frame, &pair, p);
            consider(value, pair.clone(), &mut best_value, &mut best_pair);
        }
    }

    let incumbent = best_pair.expect("at least one structured start");
    let (min_ratio, witness) = polish_pair(frame, p, &incumbent, 1e-2);
    let degenerate = crate::frame::norm(&witness.x).min(crate::frame::norm(&witness.y)) < 1e-6;
    Ok(StabilityReport {
        p,
        c_estimate: if min_ratio < PR_FAILURE_RATIO { None } else { Some(1.0 / min_ratio) },
        witness,
        min_ratio,
        method: StabilityMethod::Multistart,
        seed: config.seed,
        restarts: config.restarts,
        grid_resolution: config.grid_resolution,
        certified: false,
        certified_lower_ratio: None,
        degenerate_witness: degenerate,
    })
}

/// Strongest stability report available for the frame: the certified
/// branch-and-bound search when the dimension is 2 (at
/// `config.grid_resolution`), the multistart estimator otherwise.
pub fn best_stability_estimate(
    frame: &crate::frame::Frame,
    p: f64,
    config: &SearchConfig,
) -> Result<StabilityReport> {
    if frame.dim() == 2 {
        config.validate()?;
        grid_certified_stability_2d(frame, p, config.grid_resolution)
    } else {
        estimate_stability_constant(frame, p, config)
    }
}

/// Minimum stability ratio over an explicit collection of pairs.
/// Phase-equal pairs are skipped; the witness is `None` if every pair was
/// skipped.
pub fn min_ratio_over_samples(
    frame: &crate::frame::Frame,
    p: f64,
    pairs: impl IntoIterator<Item = VectorPair>,
) -> Result<(f64, Option<VectorPair>)> {
    if !(p >= 1.0) {
        return Err(FrameError::InvalidExponent(p));
    }
    let mut best = f64::INFINITY;
    let mut witness = None;
    for pair in pairs {
        match crate::metric::stability_ratio(frame, &pair.x, &pair.y, p) {
            Ok(value) => {
                if value < best {
                    best = value;
                    witness = Some(pair);
                }
            }
            Err(FrameError::ZeroPhaseDistance) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok((best, witness))
}

/// The quartic stability ratio of a pair:
/// `sum_j (|<x,x_j>|^2 - |<y,x_j>|^2)^2 / D` with
/// `D = (||x||^2 + ||y||^2)^2 - 4 |<x,y>|^2`. Errors where D <= 1e-14
/// (x and y phase-equal up to scale, where the ratio is undefined).
pub fn a0_ratio(frame: &crate::frame::Frame, pair: &VectorPair) -> Result<f64> {
    let num = a0_numerator(frame, pair)?;
    let den = a0_denominator(pair);
    if den <= 1e-14 {
        return Err(FrameError::ZeroPhaseDistance);
    }
    Ok(num / den)
}

fn a0_numerator(frame: &crate::frame::Frame, pair: &VectorPair) -> Result<f64> {
    let cx = frame.analyze(&pair.x)?;
    let cy = frame.analyze(&pair.y)?;
    Ok(cx
        .iter()
        .zip(&cy)
        .map(|(a, b)| {
            let d = a.norm_sqr() - b.norm_sqr();
            d * d
        })
        .sum())
}

fn a0_denominator(pair: &VectorPair) -> f64 {
    let s = norm_sq(&pair.x) + norm_sq(&pair.y);
    s * s - 4.0 * inner(&pair.x, &pair.y).norm_sqr()
}

/// Scale a pair so D = 1. The ratio is scale-invariant, so this is pure
/// conditioning. `None` where D is numerically zero.
fn normalize_d(pair: &VectorPair) -> Option<VectorPair> {
    let d = a0_denominator(pair);
    if d <= 1e-14 {
        return None;
    }
    let s = Complex64::new(d.powf(-0.25), 0.0);
    Some(VectorPair::new(scaled(&pair.x, s), scaled(&pair.y, s)).expect("same dim"))
}

/// Gradient of the quartic ratio in the `df = Re<h, g>` convention.
fn a0_ratio_grad(
    frame: &crate::frame::Frame,
    pair: &VectorPair,
    ratio: f64,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let cx = frame.analyze(&pair.x).expect("validated pair");
    let cy = frame.analyze(&pair.y).expect("validated pair");
    let n = frame.dim();
    let mut nx = vec![Complex64::new(0.0, 0.0); n];
    let mut ny = vec![Complex64::new(0.0, 0.0); n];
    for (j, v) in frame.vectors().iter().enumerate() {
        let d = cx[j].norm_sqr() - cy[j].norm_sqr();
        for i in 0..n {
            nx[i] += 4.0 * d * cx[j] * v[i];
            ny[i] -= 4.0 * d * cy[j] * v[i];
        }
    }
    let s = norm_sq(&pair.x) + norm_sq(&pair.y);
    let ip = inner(&pair.x, &pair.y);
    let den = a0_denominator(pair);
    let mut gx = Vec::with_capacity(n);
    let mut gy = Vec::with_capacity(n);
    for i in 0..n {
        let dx = 4.0 * s * pair.x[i] - 8.0 * ip * pair.y[i];
        let dy = 4.0 * s * pair.y[i] - 8.0 * ip.conj() * pair.x[i];
        gx.push((nx[i] - ratio * dx) / den);
        gy.push((ny[i] - ratio * dy) / den);
    }
    if frame.field().is_real() {
        for g in gx.iter_mut().chain(gy.iter_mut()) {
            g.im = 0.0;
        }
    }
    (gx, gy)
}

/// Armijo descent on the quartic ratio (smooth), renormalizing D to 1.
fn descend_a0(
    frame: &crate::frame::Frame,
    start: &VectorPair,
    max_iterations: usize,
) -> Option<(f64, VectorPair)> {
    let mut pair = normalize_d(start)?;
    let mut value = a0_ratio(frame, &pair).ok()?;
    let mut step = 0.25;
    for _ in 0..max_iterations {
        let (gx, gy) = a0_ratio_grad(frame, &pair, value);
        let gnorm_sq = norm_sq(&gx) + norm_sq(&gy);
        if gnorm_sq < 1e-24 || step < crate::tol::DESCENT_STEP_FLOOR {
            break;
        }
        let trial_raw = VectorPair::new(
            add_scaled(&pair.x, &gx, Complex64::new(-step, 0.0)),
            add_scaled(&pair.y, &gy, Complex64::new(-step, 0.0)),
        )
        .expect("same dim");
        let trial = match normalize_d(&trial_raw) {
            Some(t) => t,
            None => {
                step *= crate::tol::BACKTRACK;
                continue;
            }
        };
        match a0_ratio(frame, &trial) {
            Ok(trial_value) if trial_value <= value - 1e-4 * step * gnorm_sq => {
                pair = trial;
                value = trial_value;
                step *= 1.5;
            }
            _ => step *= crate::tol::BACKTRACK,
        }
    }
    Some((value, pair))
}

/// Coordinate polish for the quartic ratio (no orthogonality constraint;
/// only D-renormalization).
fn polish_a0(
    frame: &crate::frame::Frame,
    start: &VectorPair,
    initial_step: f64,
) -> (f64, VectorPair) {
    let mut pair = start.clone();
    let mut best = a0_ratio(frame, &pair).unwrap_or(f64::INFINITY);
    let complex = !frame.field().is_real();
    let n = frame.dim();
    let mut h = initial_step;
    while h > crate::tol::DEEP_POLISH_FLOOR {
        let mut improved = false;
        for slot in 0..2 * n {
            for part in 0..if complex { 2 } else { 1 } {
                for sign in [1.0, -1.0] {
                    let mut trial = pair.clone();
                    let target = if slot < n {
                        &mut trial.x[slot]
                    } else {
                        &mut trial.y[slot - n]
                    };
                    if part == 0 {
                        target.re += sign * h;
                    } else {
                        target.im += sign * h;
                    }
                    let Some(normalized) = normalize_d(&trial) else {
                        continue;
                    };
                    if let Ok(value) = a0_ratio(frame, &normalized) {
                        if value < best {
                            best = value;
                            pair = normalized;
                            improved = true;
                        }
                    }
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (best, pair)
}

/// Estimate Balan's quartic constant a0 by minimizing the quartic ratio
/// over pairs.
///
/// The search seeds from the minimizer of the lower 4-frame bound search
/// (run with the same config), extreme eigenvector combinations, and
/// `config.restarts` random pairs, then descends (the objective is smooth)
/// and polishes. The returned estimate is a minimum over a sample, hence
/// an upper bound on the true a0; pairing it with the 4-frame lower bound
/// search from the same config keeps `a0_estimate^(1/4) <= lower_4` exact.
pub fn estimate_a0(frame: &crate::frame::Frame, config: &SearchConfig) -> Result<A0Report> {
    config.validate()?;
    crate::bounds::require_frame(frame)?;
    let n = frame.dim();

    let mut candidates: Vec<VectorPair> = Vec::new();
    let zero = vec![Complex64::new(0.0, 0.0); n];
    let (_, x4) = crate::bounds::p_lower_search(frame, 4.0, config)?;
    candidates.push(VectorPair::new(x4, zero.clone()).expect("same dim"));

    let spectrum = crate::bounds::frame_spectrum(frame);
    let mut basis_like: Vec<&Vec<Complex64>> = spectrum.eigenvectors.iter().collect();
    let standard: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            let mut e = zero.clone();
            e[i] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    basis_like.extend(standard.iter());
    let mut combo_count = 0;
    for i in 0..basis_like.len() {
        for j in (i + 1)..basis_like.len() {
            if combo_count >= 24 {
                break;
            }
            let one = Complex64::new(1.0, 0.0);
            candidates.push(
                VectorPair::new(basis_like[i].clone(), basis_like[j].clone()).expect("same dim"),
            );
            candidates.push(
                VectorPair::new(
                    add_scaled(basis_like[i], basis_like[j], one),
                    add_scaled(basis_like[i], basis_like[j], -one),
                )
                .expect("same dim"),
            );
            combo_count += 1;
        }
    }

    let mut rng = crate::rng::substream(config.seed, 0xA0);
    for _ in 0..config.restarts {
        candidates.push(sample_general_pair(n, frame.field(), &mut rng)?);
    }

    let mut best_value = f64::INFINITY;
    let mut best_pair: Option<VectorPair> = None;
    for candidate in &candidates {
        if let Ok(value) = a0_ratio(frame, candidate) {
            if value < best_value {
                best_value = value;
                best_pair = Some(candidate.clone());
            }
        }
        if let Some((value, pair)) = descend_a0(frame, candidate, config.max_iterations) {
            if value < best_value {
                best_value = value;
                best_pair = Some(pair);
            }
        }
    }

    let incumbent = best_pair.expect("degenerate candidate always evaluates");
    let (a0_estimate, witness) = polish_a0(frame, &incumbent, 1e-2);
    Ok(A0Report {
        a0_estimate: a0_estimate.max(0.0),
        witness,
        method: StabilityMethod::Multistart,
        seed: config.seed,
        restarts: config.restarts,
    })
}

/// Lipschitz constant for the l4 stability theorem: a frame with quartic
/// constant a0 and upper l2 bound B does (2 B / a0)^(1/2)-stable phase
/// retrieval in l4.
pub fn l4_stability_from_a0(a0: f64, b: f64) -> Result<f64> {
    if a0 <= 0.0 {
        return Err(FrameError::NonPositive { name: "a0", value: a0 });
    }
    if b <= 0.0 {
        return Err(FrameError::NonPositive { name: "B", value: b });
    }
    Ok((2.0 * b / a0).sqrt())
}
