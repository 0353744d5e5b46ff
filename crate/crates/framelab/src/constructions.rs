//! Frame constructions used as experiment inputs.
//!
//! Two explicit families with known tight bounds, a seeded Gaussian
//! generator, and a Parseval canonicalizer. Vector order in the explicit
//! families is canonical (scaled singleton blocks first, the four fixed
//! complex vectors last) so emitted files are diffable; no computed
//! quantity depends on the order.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::bounds::frame_spectrum;
use crate::error::{FrameError, Result};
use crate::frame::{Field, Frame};

/// Declarative recipe for `build`, mirroring the CLI `construct` command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub kind: ConstructionKind,
    /// Copy count for the scaled blocks (Example33, Prop34).
    pub k: usize,
    /// Dimension (Prop34, RandomGaussian, Basis). Example33 forces 2.
    pub n: usize,
    /// Vector count (RandomGaussian only).
    pub m: usize,
    pub field: Field,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    Example33,
    Prop34,
    RandomGaussian,
    Basis,
}

/// Tight frame of C^2 with frame bound exactly 5, independent of k:
/// k copies of (k^{-1/2}, 0), k copies of (0, k^{-1/2}), then
/// (1,1), (1,-1), (1,i), (1,-i).
///
/// The scaled blocks contribute the identity to the frame operator and the
/// four fixed vectors contribute 4I, so S = 5I for every k. The pair
/// x=(1,0), y=(0,1) has measurement-gap p-th power 2k^{1-p/2}, which makes
/// the family's l_p stability constant grow like k^{1/2-1/p} while the l2
/// constant stays bounded.
pub fn example_3_3(k: usize) -> Result<Frame> {
    if k < 1 {
        return Err(FrameError::InvalidCopyCount);
    }
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let s = Complex64::new(1.0 / (k as f64).sqrt(), 0.0);
    let mut vectors = Vec::with_capacity(2 * k + 4);
    for _ in 0..k {
        vectors.push(vec![s, z]);
    }
    for _ in 0..k {
        vectors.push(vec![z, s]);
    }
    vectors.push(vec![one, one]);
    vectors.push(vec![one, -one]);
    vectors.push(vec![one, Complex64::new(0.0, 1.0)]);
    vectors.push(vec![one, Complex64::new(0.0, -1.0)]);
    Frame::new(Field::Complex, 2, vectors)
        .map(|f| f.with_label(format!("two-dim tight frame, bound 5, k={k}")))
}

/// Tight frame of the base's space with frame bound exactly 2: the n
/// standard basis vectors followed by k copies of every base vector scaled
/// by k^{-1/2} (copies grouped by pass: the whole base repeated k times).
///
/// Requires the base to be Parseval; then the scaled copies contribute the
/// identity and the basis block contributes another, giving S = 2I. The
/// witness x = (e1+e2)/2, y = (e1-e2)/2 has phase distance 1 and
/// p=4 gap^4 at most 1/k, so the l4 stability constant grows like k^{1/4}.
pub fn prop_3_4_frame(n: usize, k: usize, base: &Frame) -> Result<Frame> {
    if k < 1 {
        return Err(FrameError::InvalidCopyCount);
    }
    if base.dim() != n {
        return Err(FrameError::WrongDimension { expected: n, found: base.dim() });
    }
    let s = base.frame_operator();
    let mut deviation = 0.0f64;
    for b in 0..n {
        for a in 0..n {
            let expect = if a == b { 1.0 } else { 0.0 };
            deviation = deviation.max((s[(b, a)] - Complex64::new(expect, 0.0)).norm());
        }
    }
    if deviation > 1e-8 {
        return Err(FrameError::NotParseval(deviation));
    }
    let mut vectors = Vec::with_capacity(n + k * base.len());
    for i in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[i] = Complex64::new(1.0, 0.0);
        vectors.push(e);
    }
    let scale = Complex64::new(1.0 / (k as f64).sqrt(), 0.0);
    for _ in 0..k {
        for v in base.vectors() {
            vectors.push(v.iter().map(|z| z * scale).collect());
        }
    }
    Frame::new(base.field(), n, vectors)
        .map(|f| f.with_label(format!("basis plus scaled Parseval copies, bound 2, n={n} k={k}")))
}

/// m independent Gaussian vectors in dimension n, scaled by 1/sqrt(m).
/// Complex entries have independent Gaussian real and imaginary parts.
pub fn random_gaussian_frame(
    n: usize,
    m: usize,
    field: Field,
    rng: &mut impl Rng,
) -> Result<Frame> {
    if n == 0 {
        return Err(FrameError::ZeroDimension);
    }
    if m < n {
        return Err(FrameError::TooFewVectors { m, n });
    }
    let scale = 1.0 / (m as f64).sqrt();
    let vectors = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = match field {
                        Field::Real => 0.0,
                        Field::Complex => rng.sample(StandardNormal),
                    };
                    Complex64::new(re * scale, im * scale)
                })
                .collect()
        })
        .collect();
    Frame::new(field, n, vectors)
}

/// Standard basis of R^n or C^n.
pub fn basis_frame(n: usize, field: Field) -> Result<Frame> {
    if n == 0 {
        return Err(FrameError::ZeroDimension);
    }
    let vectors = (0..n)
        .map(|i| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[i] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    Frame::new(field, n, vectors)
}

/// Apply S^{-1/2} to every vector, producing a Parseval frame (operator =
/// identity). Idempotent up to roundoff; rejects numerically rank-deficient
/// input since S^{-1/2} does not exist there.
pub fn parsevalize(frame: &Frame) -> Result<Frame> {
    let spectrum = frame_spectrum(frame);
    if spectrum.eigenvalues[0] <= 1e-10 {
        return Err(FrameError::NotAFrame(spectrum.eigenvalues[0].max(0.0)));
    }
    // S^{-1/2} x = sum_i lambda_i^{-1/2} <x, u_i> u_i over the eigenpairs.
    let n = frame.dim();
    let vectors = frame
        .vectors()
        .iter()
        .map(|x| {
            let mut out = vec![Complex64::new(0.0, 0.0); n];
            for (lambda, u) in spectrum.eigenvalues.iter().zip(&spectrum.eigenvectors) {
                let coeff = crate::frame::inner(x, u) / lambda.sqrt();
                for (o, ui) in out.iter_mut().zip(u) {
                    *o += coeff * ui;
                }
            }
            // The real path produces real eigenvectors, but kill roundoff
            // imaginary dust so the Frame field invariant holds exactly.
            if frame.field().is_real() {
                for z in &mut out {
                    z.im = 0.0;
                }
            }
            out
        })
        .collect();
    Frame::new(frame.field(), n, vectors)
}

/// Build a frame from a declarative spec (CLI entry point).
pub fn build(spec: &ConstructionSpec) -> Result<Frame> {
    match spec.kind {
        ConstructionKind::Example33 => example_3_3(spec.k),
        ConstructionKind::Prop34 => {
            let mut rng = crate::rng::seeded_rng(spec.seed);
            let base = parsevalize(&random_gaussian_frame(
                spec.n,
                4 * spec.n,
                spec.field,
                &mut rng,
            )?)?;
            prop_3_4_frame(spec.n, spec.k, &base)
        }
        ConstructionKind::RandomGaussian => {
            let mut rng = crate::rng::seeded_rng(spec.seed);
            random_gaussian_frame(spec.n, spec.m, spec.field, &mut rng)
        }
        ConstructionKind::Basis => basis_frame(spec.n, spec.field),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::frame_bounds_l2;
    use crate::metric::magnitude_gap;
    use crate::rng::seeded_rng;

    fn max_operator_deviation(frame: &Frame, scale: f64) -> f64 {
        let s = frame.frame_operator();
        let n = frame.dim();
        let mut dev = 0.0f64;
        for b in 0..n {
            for a in 0..n {
                let expect = if a == b { scale } else { 0.0 };
                dev = dev.max((s[(b, a)] - Complex64::new(expect, 0.0)).norm());
            }
        }
        dev
    }

    #[test]
    fn tight_frame_operator_is_5i_for_all_k() {
        for k in [1usize, 2, 8, 64] {
            let frame = example_3_3(k).unwrap();
            assert_eq!(frame.len(), 2 * k + 4);
            assert_eq!(frame.dim(), 2);
            assert!(max_operator_deviation(&frame, 5.0) < 1e-12, "k={k}");
        }
        assert!(matches!(example_3_3(0), Err(FrameError::InvalidCopyCount)));
    }

    #[test]
    fn analysis_of_e1_on_the_k1_frame() {
        let frame = example_3_3(1).unwrap();
        let x = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let mags = frame.analyze_magnitudes(&x).unwrap();
        let expect = [1.0, 0.0, 1.0, 1.0, 1.0, 1.0];
        for (m, e) in mags.iter().zip(expect) {
            assert!((m - e).abs() < 1e-15);
        }
    }

    #[test]
    fn witness_gap_power_identity() {
        // For x=(1,0), y=(0,1): sum of gap^p is 2 k^{1-p/2} exactly.
        let x = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let y = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        for k in [1usize, 4, 16] {
            let frame = example_3_3(k).unwrap();
            for p in [2.0, 3.0, 4.0, 6.0] {
                let gap = magnitude_gap(&frame, &x, &y, p).unwrap();
                let expect = (2.0 * (k as f64).powf(1.0 - p / 2.0)).powf(1.0 / p);
                assert!(
                    (gap - expect).abs() <= 1e-12 * expect,
                    "k={k} p={p}: {gap} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn prop_3_4_is_tight_with_bound_2() {
        let mut rng = seeded_rng(42);
        for (n, k) in [(2usize, 1usize), (2, 4), (3, 2)] {
            let base =
                parsevalize(&random_gaussian_frame(n, 4 * n, Field::Complex, &mut rng).unwrap())
                    .unwrap();
            let frame = prop_3_4_frame(n, k, &base).unwrap();
            assert_eq!(frame.len(), n + k * base.len());
            let bounds = frame_bounds_l2(&frame);
            assert!((bounds.lower - 2.0).abs() < 1e-8, "n={n} k={k}: {}", bounds.lower);
            assert!((bounds.upper - 2.0).abs() < 1e-8);
        }
    }

    #[test]
    fn prop_3_4_witness_gap_shrinks_like_inverse_k() {
        let mut rng = seeded_rng(43);
        let n = 3;
        let base =
            parsevalize(&random_gaussian_frame(n, 4 * n, Field::Complex, &mut rng).unwrap())
                .unwrap();
        let half = Complex64::new(0.5, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let x = vec![half, half, zero];
        let y = vec![half, -half, zero];
        for k in [1usize, 4, 16] {
            let frame = prop_3_4_frame(n, k, &base).unwrap();
            let gap4 = magnitude_gap(&frame, &x, &y, 4.0).unwrap().powi(4);
            assert!(gap4 <= 1.0 / k as f64 + 1e-12, "k={k}: {gap4}");
            let dist = crate::metric::min_phase_distance(Field::Complex, &x, &y);
            assert!((dist - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn prop_3_4_rejects_non_parseval_base() {
        let doubled = Frame::from_real(2, vec![vec![2.0, 0.0], vec![0.0, 2.0]]).unwrap();
        assert!(matches!(
            prop_3_4_frame(2, 1, &doubled),
            Err(FrameError::NotParseval(_))
        ));
    }

    #[test]
    fn gaussian_frame_is_reproducible_and_validated() {
        let a = random_gaussian_frame(2, 64, Field::Complex, &mut seeded_rng(7)).unwrap();
        let b = random_gaussian_frame(2, 64, Field::Complex, &mut seeded_rng(7)).unwrap();
        assert_eq!(a, b);
        assert!(frame_bounds_l2(&a).is_frame());
        assert!(matches!(
            random_gaussian_frame(2, 1, Field::Real, &mut seeded_rng(0)),
            Err(FrameError::TooFewVectors { m: 1, n: 2 })
        ));
        let real = random_gaussian_frame(3, 9, Field::Real, &mut seeded_rng(1)).unwrap();
        assert!(real.vectors().iter().all(|v| v.iter().all(|z| z.im == 0.0)));
    }

    #[test]
    fn parsevalize_produces_identity_operator() {
        let mut rng = seeded_rng(8);
        let frame = random_gaussian_frame(3, 12, Field::Complex, &mut rng).unwrap();
        let parseval = parsevalize(&frame).unwrap();
        assert!(max_operator_deviation(&parseval, 1.0) < 1e-10);
        let bounds = frame_bounds_l2(&parseval);
        assert!((bounds.lower - 1.0).abs() < 1e-10 && (bounds.upper - 1.0).abs() < 1e-10);

        // Idempotence and the scaled-basis fixed point.
        let again = parsevalize(&parseval).unwrap();
        for (u, v) in again.vectors().iter().zip(parseval.vectors()) {
            for (a, b) in u.iter().zip(v) {
                assert!((a - b).norm() < 1e-10);
            }
        }
        let doubled = Frame::from_real(2, vec![vec![2.0, 0.0], vec![0.0, 2.0]]).unwrap();
        let unit = parsevalize(&doubled).unwrap();
        assert!((unit.vector(0)[0].re - 1.0).abs() < 1e-12);
        assert!(unit.vector(0)[0].im == 0.0);

        let deficient = Frame::from_real(2, vec![vec![1.0, 0.0]]).unwrap();
        assert!(parsevalize(&deficient).is_err());
    }

    #[test]
    fn real_parsevalize_stays_real() {
        let mut rng = seeded_rng(9);
        let frame = random_gaussian_frame(3, 7, Field::Real, &mut rng).unwrap();
        let parseval = parsevalize(&frame).unwrap();
        assert_eq!(parseval.field(), Field::Real);
        assert!(max_operator_deviation(&parseval, 1.0) < 1e-10);
    }

    #[test]
    fn build_covers_every_kind() {
        let spec = ConstructionSpec {
            kind: ConstructionKind::Example33,
            k: 2,
            n: 2,
            m: 0,
            field: Field::Complex,
            seed: 0,
        };
        assert_eq!(build(&spec).unwrap().len(), 8);
        let spec = ConstructionSpec {
            kind: ConstructionKind::Prop34,
            k: 2,
            n: 3,
            m: 0,
            field: Field::Complex,
            seed: 5,
        };
        let frame = build(&spec).unwrap();
        assert!((frame_bounds_l2(&frame).upper - 2.0).abs() < 1e-8);
        let spec = ConstructionSpec {
            kind: ConstructionKind::RandomGaussian,
            k: 1,
            n: 2,
            m: 8,
            field: Field::Real,
            seed: 3,
        };
        assert_eq!(build(&spec).unwrap().len(), 8);
        let spec = ConstructionSpec {
            kind: ConstructionKind::Basis,
            k: 1,
            n: 4,
            m: 0,
            field: Field::Complex,
            seed: 0,
        };
        assert_eq!(build(&spec).unwrap().dim(), 4);
    }
}
