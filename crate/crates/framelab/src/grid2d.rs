//! Certified stability search in dimension 2.
//!
//! Orthogonal pairs of a 2-dimensional space, normalized to
//! `||x||^2 + ||y||^2 = 1` and taken modulo the phases the objective cannot
//! see, form a compact box: `x = cos(g) u`, `y = sin(g) u_perp` with
//! `u = (cos(a), e^{i f} sin(a))` and `u_perp = (-e^{-i f} sin(a), cos(a))`.
//! On this manifold the phase distance is identically 1, so the stability
//! ratio equals the measurement gap, and the gap is Lipschitz in the
//! parameters with constant `2 B_p` per coordinate (`B_p` an upper p-frame
//! bound). Branch-and-bound over the box with that constant certifies the
//! infimum to a requested relative width; a pattern polish then sharpens
//! the incumbent witness.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::bounds::frame_bounds_l2;
use crate::error::{FrameError, Result};
use crate::frame::{Field, Frame, VectorPair};
use crate::metric::pow_half_p;
use crate::stability::{StabilityMethod, StabilityReport, PR_FAILURE_RATIO};
use crate::tol;

/// Hard cap on objective evaluations; hitting it returns an uncertified
/// (but still valid) bracket. Sized so the worst suite call stays under a
/// few seconds.
const MAX_EVALS: usize = 12_000_000;


/// Per-frame-vector precomputation: |<u, v_j>|^2 and |<u_perp, v_j>|^2
/// expand in (alpha, phi) through n0 = |v0|^2, n1 = |v1|^2 and
/// w = v0 conj(v1):
///   |<u, v_j>|^2      = ca^2 n0 + sa^2 n1 + 2 ca sa (Re w cos f - Im w sin f)
///   |<u_perp, v_j>|^2 = sa^2 n0 + ca^2 n1 - 2 ca sa (Re w cos f - Im w sin f)
struct Ctx {
    rows: Vec<(f64, f64, f64, f64)>,
    field: Field,
    p: f64,
}

impl Ctx {
    fn new(frame: &Frame, p: f64) -> Self {
        let rows = frame
            .vectors()
            .iter()
            .map(|v| {
                let w = v[0] * v[1].conj();
                (v[0].norm_sqr(), v[1].norm_sqr(), w.re, w.im)
            })
            .collect();
        Ctx { rows, field: frame.field(), p }
    }

    /// Magnitudes (a_j, b_j) of the analysis coefficients of (u, u_perp),
    /// streamed into `consume`.
    #[inline]
    fn coefficient_magnitudes(&self, alpha: f64, phi: f64, mut consume: impl FnMut(f64, f64)) {
        let (sa, ca) = alpha.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let (ca2, sa2, cross) = (ca * ca, sa * sa, 2.0 * ca * sa);
        for &(n0, n1, wr, wi) in &self.rows {
            let t = wr * cp - wi * sp;
            let a2 = (ca2 * n0 + sa2 * n1 + cross * t).max(0.0);
            let b2 = (sa2 * n0 + ca2 * n1 - cross * t).max(0.0);
            consume(a2.sqrt(), b2.sqrt());
        }
    }

    /// Measurement gap of the pair at (alpha, phi, gamma). The phase
    /// distance on the manifold is 1, so this is the stability ratio.
    fn gap(&self, alpha: f64, phi: f64, gamma: f64) -> f64 {
        let (sg, cg) = gamma.sin_cos();
        let mut sum = 0.0;
        self.coefficient_magnitudes(alpha, phi, |a, b| {
            let d = cg * a - sg * b;
            sum += pow_half_p(d * d, self.p);
        });
        sum.powf(1.0 / self.p)
    }

    /// Exact minimum of the p = 2 gap over gamma, with the minimizer:
    /// gap^2 = Sa cos^2 g + Sb sin^2 g - 2 Sab sin g cos g is sinusoidal
    /// in 2g, minimized in closed form inside [0, pi/2] because Sab >= 0.
    fn gap2_min_over_gamma(&self, alpha: f64, phi: f64) -> (f64, f64) {
        let (mut sa_sum, mut sb_sum, mut sab_sum) = (0.0, 0.0, 0.0);
        self.coefficient_magnitudes(alpha, phi, |a, b| {
            sa_sum += a * a;
            sb_sum += b * b;
            sab_sum += a * b;
        });
        let mid = 0.5 * (sa_sum + sb_sum);
        let radius = (0.25 * (sa_sum - sb_sum) * (sa_sum - sb_sum) + sab_sum * sab_sum).sqrt();
        let delta = sab_sum.atan2(0.5 * (sa_sum - sb_sum));
        let gamma = 0.5 * (std::f64::consts::PI - delta);
        ((mid - radius).max(0.0).sqrt(), gamma)
    }

    /// Objective value at a parameter point; for p = 2 the gamma slot is
    /// resolved exactly and ignored on input.
    fn value(&self, params: [f64; 3]) -> f64 {
        if self.p == 2.0 {
            self.gap2_min_over_gamma(params[0], params[1]).0
        } else {
            self.gap(params[0], params[1], params[2])
        }
    }

    /// The witness pair at a parameter point (resolving gamma for p = 2).
    fn pair(&self, params: [f64; 3]) -> VectorPair {
        let [alpha, phi, mut gamma] = params;
        if self.p == 2.0 {
            gamma = self.gap2_min_over_gamma(alpha, phi).1;
        }
        let (sa, ca) = alpha.sin_cos();
        let (sg, cg) = gamma.sin_cos();
        let (u, u_perp) = match self.field {
            Field::Real => (
                vec![Complex64::new(ca, 0.0), Complex64::new(sa, 0.0)],
                vec![Complex64::new(-sa, 0.0), Complex64::new(ca, 0.0)],
            ),
            Field::Complex => (
                vec![Complex64::new(ca, 0.0), Complex64::from_polar(sa, phi)],
                vec![Complex64::from_polar(-sa, -phi), Complex64::new(ca, 0.0)],
            ),
        };
        let x = u.iter().map(|z| z * cg).collect();
        let y = u_perp.iter().map(|z| z * sg).collect();
        VectorPair::new(x, y).expect("matched dims")
    }
}

#[derive(Clone, Copy)]
struct Cell {
    lb: f64,
    center: [f64; 3],
    half: [f64; 3],
}

/// Min-heap ordering on the lower bound.
struct ByLb(Cell);

impl PartialEq for ByLb {
    fn eq(&self, other: &Self) -> bool {
        self.0.lb == other.0.lb
    }
}
impl Eq for ByLb {}
impl PartialOrd for ByLb {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ByLb {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.lb.total_cmp(&other.0.lb)
    }
}

/// Deterministic pattern polish of the incumbent inside the parameter box.
fn polish(
    ctx: &Ctx,
    ranges: &[(f64, f64); 3],
    start: [f64; 3],
    initial_step: f64,
) -> (f64, [f64; 3]) {
    let mut params = start;
    let mut best = ctx.value(params);
    let mut h = initial_step;
    while h > tol::DEEP_POLISH_FLOOR {
        let mut improved = false;
        for dim in 0..3 {
            let (lo, hi) = ranges[dim];
            if hi <= lo {
                continue;
            }
            for sign in [1.0, -1.0] {
                let mut trial = params;
                trial[dim] = (trial[dim] + sign * h).clamp(lo, hi);
                if trial[dim] == params[dim] {
                    continue;
                }
                let value = ctx.value(trial);
                if value < best {
                    best = value;
                    params = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (best, params)
}

/// Certified search for the minimal stability ratio of a dimension-2
/// frame over orthogonal pairs.
///
/// `resolution` is the target relative width of the certificate: on
/// success the true orthogonal infimum lies in
/// `[certified_lower_ratio, min_ratio]` with
/// `min_ratio - certified_lower_ratio <= resolution * min_ratio` (up to
/// the final polish, which can only shrink the interval). A frame that
/// fails phase retrieval is detected by a witness ratio below the zero
/// floor instead; such reports carry `c_estimate = None`.
pub fn grid_certified_stability_2d(frame: &Frame, p: f64, resolution: f64) -> Result<StabilityReport> {
    if frame.dim() != 2 {
        return Err(FrameError::WrongDimension { expected: 2, found: frame.dim() });
    }
    if !(p >= 1.0) {
        return Err(FrameError::InvalidExponent(p));
    }
    if !(resolution > 0.0) {
        return Err(FrameError::NonPositive { name: "resolution", value: resolution });
    }

    // Lipschitz constant 2 B_p per parameter: the gap moves by at most
    // B_p (||dx|| + ||dy||), and each parameter moves x and y by at most
    // its own increment. B_p <= sqrt(B) for p >= 2 and picks up the usual
    // m^{1/p - 1/2} factor below 2.
    let b2 = frame_bounds_l2(frame).upper.max(0.0).sqrt();
    let bp = if p >= 2.0 {
        b2
    } else {
        b2 * (frame.len() as f64).powf(1.0 / p - 0.5)
    };
    let lipschitz = 2.0 * bp * (1.0 + 1e-9);

    let ctx = Ctx::new(frame, p);
    let ranges: [(f64, f64); 3] = [
        match frame.field() {
            Field::Real => (0.0, std::f64::consts::PI),
            Field::Complex => (0.0, std::f64::consts::FRAC_PI_2),
        },
        match frame.field() {
            Field::Real => (0.0, 0.0),
            Field::Complex => (0.0, std::f64::consts::TAU),
        },
        if p == 2.0 { (0.0, 0.0) } else { (0.0, std::f64::consts::FRAC_PI_2) },
    ];
    let splits: [usize; 3] = [
        if frame.field().is_real() { 48 } else { 24 },
        if frame.field().is_real() { 1 } else { 48 },
        if p == 2.0 { 1 } else { 16 },
    ];

    fn eval(ctx: &Ctx, evals: &mut usize, params: [f64; 3]) -> f64 {
        *evals += 1;
        ctx.value(params)
    }
    fn consider(value: f64, params: [f64; 3], best_value: &mut f64, best_params: &mut [f64; 3]) {
        if value < *best_value {
            *best_value = value;
            *best_params = params;
        }
    }

    let mut evals: usize = 0;
    let mut best_value = f64::INFINITY;
    let mut best_params = [0.0; 3];
    let mut heap: BinaryHeap<Reverse<ByLb>> = BinaryHeap::new();
    for ia in 0..splits[0] {
        for ip in 0..splits[1] {
            for ig in 0..splits[2] {
                let idx = [ia, ip, ig];
                let mut center = [0.0; 3];
                let mut half = [0.0; 3];
                for d in 0..3 {
                    let width = (ranges[d].1 - ranges[d].0) / splits[d] as f64;
                    half[d] = width / 2.0;
                    center[d] = ranges[d].0 + (idx[d] as f64 + 0.5) * width;
                }
                let value = eval(&ctx, &mut evals, center);
                consider(value, center, &mut best_value, &mut best_params);
                let lb = (value - lipschitz * (half[0] + half[1] + half[2])).max(0.0);
                heap.push(Reverse(ByLb(Cell { lb, center, half })));
            }
        }
    }

    let mut converged = false;
    let mut failed = false;
    let mut frontier_lb = f64::INFINITY;
    loop {
        let Some(Reverse(ByLb(cell))) = heap.pop() else {
            // Every remaining region was pruned above the moving
            // threshold, which only tightens as the incumbent improves.
            converged = true;
            break;
        };
        frontier_lb = cell.lb;
        if best_value < tol::BB_ZERO_FLOOR {
            failed = true;
            break;
        }
        if cell.lb >= best_value * (1.0 - resolution) {
            converged = true;
            break;
        }
        if evals >= MAX_EVALS {
            break;
        }
        let dim = (0..3).max_by(|&i, &j| cell.half[i].total_cmp(&cell.half[j])).unwrap();
        for sign in [-1.0, 1.0] {
            let mut center = cell.center;
            center[dim] += sign * cell.half[dim] / 2.0;
            let mut half = cell.half;
            half[dim] /= 2.0;
            let value = eval(&ctx, &mut evals, center);
            consider(value, center, &mut best_value, &mut best_params);
            let lb = (value - lipschitz * (half[0] + half[1] + half[2])).max(cell.lb);
            // Regions provably above the certificate threshold can be
            // dropped: the threshold only decreases as the incumbent
            // improves, so dropping now is sound at termination too.
            if lb < best_value * (1.0 - resolution) {
                heap.push(Reverse(ByLb(Cell { lb, center, half })));
            }
        }
    }

    let initial_polish_step = 1e-2;
    let (min_ratio, final_params) = polish(&ctx, &ranges, best_params, initial_polish_step);
    // Pruned and unexplored regions all sit above best*(1-resolution) for
    // the final (smallest) incumbent of the loop; the popped frontier
    // bounds whatever was still active.
    let certified_lower = frontier_lb
        .min(best_value * (1.0 - resolution))
        .min(min_ratio)
        .max(0.0);
    let witness = ctx.pair(final_params);
    let degenerate = crate::frame::norm(&witness.x).min(crate::frame::norm(&witness.y)) < 1e-6;

    Ok(StabilityReport {
        p,
        c_estimate: if min_ratio < PR_FAILURE_RATIO { None } else { Some(1.0 / min_ratio) },
        witness,
        min_ratio,
        method: StabilityMethod::Grid2D,
        seed: 0,
        restarts: 0,
        grid_resolution: resolution,
        certified: converged || failed,
        certified_lower_ratio: Some(certified_lower),
        degenerate_witness: degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::example_3_3;
    use crate::frame::Frame;

    #[test]
    fn detects_phase_retrieval_failure_of_the_real_basis() {
        let basis = Frame::from_real(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let report = grid_certified_stability_2d(&basis, 2.0, 0.01).unwrap();
        assert!(report.min_ratio < 1e-6, "ratio {}", report.min_ratio);
        assert!(report.fails_phase_retrieval());
        assert!(report.c_estimate.is_none());
        // The zero-gap witness: both members have equal measurement
        // magnitudes but unit phase distance.
        let gap = crate::metric::magnitude_gap(&basis, &report.witness.x, &report.witness.y, 2.0)
            .unwrap();
        let dist = crate::metric::min_phase_distance(Field::Real, &report.witness.x, &report.witness.y);
        assert!(gap < 1e-8);
        assert!((dist - 1.0).abs() < 1e-9);
    }

    #[test]
    fn certifies_the_k16_p4_constant_of_the_tight_family() {
        let frame = example_3_3(16).unwrap();
        let report = grid_certified_stability_2d(&frame, 4.0, 0.05).unwrap();
        assert!(report.certified);
        let c = report.c_estimate.unwrap();
        // The pair (e1, e2) realizes ratio (2k)^{-1/4}, so C is at least
        // (2k)^{1/4} = 32^{1/4}; interior pairs do slightly better.
        assert!(c >= 2.3784142300054421 - 1e-3, "c = {c}");
        assert!(report.min_ratio <= 0.4205);
        let lb = report.certified_lower_ratio.unwrap();
        assert!(lb > 0.0 && lb <= report.min_ratio);
        assert!((report.min_ratio - lb) <= 0.05 * report.min_ratio + 1e-12);
    }

    #[test]
    fn k1_p2_certified_constant_is_reproducible_and_tight() {
        let frame = example_3_3(1).unwrap();
        let a = grid_certified_stability_2d(&frame, 2.0, 0.005).unwrap();
        let b = grid_certified_stability_2d(&frame, 2.0, 0.005).unwrap();
        assert_eq!(a.min_ratio.to_bits(), b.min_ratio.to_bits());
        assert!(a.certified);
        // The witness pair ((1,0), (0,1)) scaled to the manifold realizes
        // ratio 1, so the certified minimum cannot exceed it.
        assert!(a.min_ratio <= 1.0 + 1e-12);
        assert!(a.c_estimate.unwrap() >= 1.0 - 1e-9);
        // C >= A^{-1/2} = 5^{-1/2} on this tight frame.
        assert!(a.c_estimate.unwrap() * (1.0 + 1e-6) >= 1.0 / 5f64.sqrt());
    }

    #[test]
    fn witness_is_orthogonal_and_jointly_normalized() {
        let frame = example_3_3(4).unwrap();
        let report = grid_certified_stability_2d(&frame, 4.0, 0.01).unwrap();
        let w = &report.witness;
        let ip = crate::frame::inner(&w.x, &w.y).norm();
        assert!(ip <= 1e-10 * crate::frame::norm(&w.x) * crate::frame::norm(&w.y) + 1e-300);
        let total = crate::frame::norm_sq(&w.x) + crate::frame::norm_sq(&w.y);
        assert!((total - 1.0).abs() < 1e-9);
        // Report invariant: c_estimate = 1 / min_ratio.
        assert!((report.c_estimate.unwrap() * report.min_ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_wrong_dimension_and_bad_parameters() {
        let frame = Frame::from_real(3, vec![vec![1.0, 0.0, 0.0]]).unwrap();
        assert!(matches!(
            grid_certified_stability_2d(&frame, 2.0, 0.01),
            Err(FrameError::WrongDimension { expected: 2, found: 3 })
        ));
        let ok = Frame::from_real(2, vec![vec![1.0, 0.0]]).unwrap();
        assert!(grid_certified_stability_2d(&ok, 0.5, 0.01).is_err());
        assert!(grid_certified_stability_2d(&ok, 2.0, 0.0).is_err());
    }
}
