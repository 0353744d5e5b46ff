//! Acceptance gate: eleven numbered criteria, one test each.
//!
//! Each test prints `criterion NN: pass` with its measured numbers on
//! success (visible with `--nocapture`); the per-test ok/FAILED line in
//! the cargo output is the machine-readable verdict. Criteria that have
//! a runtime budget assert it on the suite's own wall clock.

use std::time::{Duration, Instant};

use framelab::bounds::frame_bounds_l2;
use framelab::constructions::{basis_frame, example_3_3, random_gaussian_frame};
use framelab::grid2d::grid_certified_stability_2d;
use framelab::metric::lp_norm;
use framelab::perturbation::{
    balan_rho_sum, christensen_bounds, perturbed_pr_bound,
};
use framelab::report::Theorem;
use framelab::rng::substream;
use framelab::stability::{
    best_stability_estimate, estimate_a0, l4_stability_from_a0, SearchConfig,
};
use framelab::suite::{run_suite, SuiteConfig, SuiteResult};
use framelab::{Field, Frame};

fn default_suite(name: &str) -> SuiteResult {
    run_suite(name, &SuiteConfig::default()).expect("suite runs")
}

fn assert_suite_clean(result: &SuiteResult, budget: Duration) {
    assert_eq!(
        result.hard_failures(),
        0,
        "{} hard failures in {}",
        result.hard_failures(),
        result.suite
    );
    assert!(
        result.wall_time < budget,
        "{} took {:.1}s, budget {:.0}s",
        result.suite,
        result.wall_time.as_secs_f64(),
        budget.as_secs_f64()
    );
}

fn witness_pair(dim: usize) -> (Vec<num_complex::Complex64>, Vec<num_complex::Complex64>) {
    let zero = num_complex::Complex64::new(0.0, 0.0);
    let one = num_complex::Complex64::new(1.0, 0.0);
    let mut e1 = vec![zero; dim];
    let mut e2 = vec![zero; dim];
    e1[0] = one;
    e2[1] = one;
    (e1, e2)
}

#[test]
fn criterion_01_copies_family_operator_is_five_i() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for k in [1usize, 2, 8, 64] {
        let frame = example_3_3(k).expect("k >= 1");
        let s = frame.frame_operator();
        for r in 0..2 {
            for c in 0..2 {
                let expected = if r == c { 5.0 } else { 0.0 };
                let dev = (s[(r, c)] - num_complex::Complex64::new(expected, 0.0)).norm();
                worst = worst.max(dev);
            }
        }
    }
    assert!(worst < 1e-10, "max entrywise deviation from 5I: {worst}");
    assert!(start.elapsed() < Duration::from_secs(1));
    println!("criterion 01: pass (operator deviation {worst:.2e}, all k)");
}

#[test]
fn criterion_02_witness_identity_and_quartic_growth() {
    let start = Instant::now();
    let mut worst_rel: f64 = 0.0;
    for k in [1usize, 4, 16] {
        let frame = example_3_3(k).expect("k >= 1");
        let (e1, e2) = witness_pair(2);
        let mx = frame.analyze_magnitudes(&e1).expect("dims match");
        let my = frame.analyze_magnitudes(&e2).expect("dims match");
        let gaps: Vec<f64> = mx.iter().zip(&my).map(|(a, b)| (a - b).abs()).collect();
        for p in [2.0, 3.0, 4.0, 6.0] {
            let measured = lp_norm(&gaps, p).powf(p);
            let predicted = 2.0 * (k as f64).powf(1.0 - p / 2.0);
            let rel = (measured - predicted).abs() / predicted;
            worst_rel = worst_rel.max(rel);
        }
    }
    assert!(worst_rel <= 1e-12, "witness identity off by {worst_rel:.2e} relative");

    let frame = example_3_3(16).expect("k = 16");
    let report = grid_certified_stability_2d(&frame, 4.0, 0.05).expect("grid runs");
    let c4 = report.c_estimate.expect("family does phase retrieval");
    let target = 32f64.powf(0.25);
    assert!(c4 >= target - 1e-3, "certified C4 = {c4} < {target} - 1e-3");
    assert!(start.elapsed() < Duration::from_secs(10));
    println!("criterion 02: pass (identity rel {worst_rel:.2e}, C4(16) = {c4:.6} >= {target:.6})");
}

#[test]
fn criterion_03_quadratic_constant_flat_across_k() {
    let start = Instant::now();
    let mut cs = Vec::new();
    for k in [1usize, 4, 16, 64] {
        let frame = example_3_3(k).expect("k >= 1");
        let report = grid_certified_stability_2d(&frame, 2.0, 0.02).expect("grid runs");
        cs.push(report.c_estimate.expect("family does phase retrieval"));
    }
    let (lo, hi) = (cs.iter().cloned().fold(f64::INFINITY, f64::min),
                    cs.iter().cloned().fold(0.0f64, f64::max));
    assert!(hi < 2.0 * lo, "C2 spread {lo}..{hi} exceeds factor 2");
    assert!(start.elapsed() < Duration::from_secs(60));
    println!("criterion 03: pass (C2 in [{lo:.6}, {hi:.6}] across k)");
}

#[test]
fn criterion_04_exact_bounds_survive_perturbation() {
    let result = default_suite("verify-christensen");
    assert_eq!(result.checks.len(), 200, "200 trials expected");
    assert!(result.checks.iter().all(|c| c.theorem == Theorem::Christensen));
    assert!(result.checks.iter().all(|c| c.precondition_satisfied && c.pass == Some(true)));
    assert_suite_clean(&result, Duration::from_secs(30));
    println!(
        "criterion 04: pass (200/200 containment trials, {:.1}s)",
        result.wall_time.as_secs_f64()
    );
}

#[test]
fn criterion_05_stability_constant_survives_perturbation() {
    for (c, b) in [(1.0, 1.0), (1.7, 1.3), (2.5, 0.8)] {
        let back = perturbed_pr_bound(c, b, 1e-300).expect("tiny eps");
        assert!((back - c).abs() <= 1e-12 * c, "bound at eps=1e-300: {back} vs {c}");
    }
    let result = default_suite("verify-thm12");
    let trials = result
        .checks
        .iter()
        .filter(|c| c.theorem == Theorem::MainThm12)
        .count();
    assert!(trials > 100, "identity row + 100 trials expected, saw {trials}");
    assert_suite_clean(&result, Duration::from_secs(300));
    println!(
        "criterion 05: pass ({} certified-bound trials, {:.1}s)",
        trials - 1,
        result.wall_time.as_secs_f64()
    );
}

#[test]
fn criterion_06_a0_known_values() {
    let start = Instant::now();
    let config = SearchConfig::default();

    let unit = Frame::new(Field::Complex, 1, vec![vec![num_complex::Complex64::new(1.0, 0.0)]])
        .expect("valid frame");
    let report = estimate_a0(&unit, &config).expect("a0 runs");
    assert!(
        (report.a0_estimate - 1.0).abs() <= 1e-6,
        "dim-1 unit frame a0 = {}",
        report.a0_estimate
    );

    let basis = basis_frame(2, Field::Real).expect("basis");
    let report = estimate_a0(&basis, &config).expect("a0 runs");
    assert!(report.a0_estimate < 1e-8, "real basis a0 = {}", report.a0_estimate);
    // The witness must be a genuine zero-gap pair, not a degenerate one.
    let mx = basis.analyze_magnitudes(&report.witness.x).expect("dims match");
    let my = basis.analyze_magnitudes(&report.witness.y).expect("dims match");
    let numerator: f64 = mx
        .iter()
        .zip(&my)
        .map(|(a, b)| (a * a - b * b).powi(2))
        .sum();
    assert!(numerator < 1e-8, "witness quartic gap = {numerator}");
    assert!(start.elapsed() < Duration::from_secs(5));
    println!("criterion 06: pass (unit a0 = 1, real basis a0 < 1e-8 with zero-gap witness)");
}

#[test]
fn criterion_07_quartic_chain_and_root_bound() {
    let result = default_suite("verify-prop33");
    // 20 frames x 5000 pairs = 1e5 sampled chain evaluations, plus one
    // root-vs-lower-bound row per frame.
    let chain_rows = result
        .checks
        .iter()
        .filter(|c| c.theorem == Theorem::Prop33Chain)
        .count();
    assert_eq!(chain_rows, 40, "20 chain rows + 20 root rows expected");
    assert_eq!(result.config.chain_frames, 20);
    assert_eq!(result.config.chain_pairs_per_frame, 5000);
    assert_suite_clean(&result, Duration::from_secs(60));
    println!(
        "criterion 07: pass (1e5 chain samples across 20 frames, {:.1}s)",
        result.wall_time.as_secs_f64()
    );
}

#[test]
fn criterion_08_orthogonal_reduction() {
    let result = default_suite("verify-lemma21");
    assert_eq!(result.config.reduction_pairs, 10_000);
    let rows = result
        .checks
        .iter()
        .filter(|c| c.theorem == Theorem::Lemma21Reduction)
        .count();
    assert_eq!(rows, 10, "6 reduction rows + 4 certified dim-2 match rows");
    assert_suite_clean(&result, Duration::from_secs(60));
    println!(
        "criterion 08: pass (reduction and 2%-match rows, {:.1}s)",
        result.wall_time.as_secs_f64()
    );
}

#[test]
fn criterion_09_stability_floor() {
    // Every stability estimate across the full battery respects
    // C >= A^(-1/2); the floor rows encode exactly this comparison.
    let result = default_suite("all");
    let floor_rows: Vec<_> = result
        .checks
        .iter()
        .filter(|c| c.theorem == Theorem::CgeqAinvHalf)
        .collect();
    assert!(!floor_rows.is_empty(), "no floor rows emitted");
    assert!(
        floor_rows.iter().all(|c| c.pass == Some(true)),
        "a floor row failed"
    );

    // Direct spot checks with both estimators.
    let mut rng = substream(40, 0);
    let frames = [
        example_3_3(1).expect("k = 1"),
        example_3_3(8).expect("k = 8"),
        random_gaussian_frame(2, 6, Field::Complex, &mut rng).expect("frame"),
        random_gaussian_frame(3, 9, Field::Complex, &mut rng).expect("frame"),
        random_gaussian_frame(4, 12, Field::Complex, &mut rng).expect("frame"),
    ];
    let config = SearchConfig { grid_resolution: 0.02, ..SearchConfig::default() };
    for frame in &frames {
        let a = frame_bounds_l2(frame).lower;
        let report = best_stability_estimate(frame, 2.0, &config).expect("estimate runs");
        if let Some(c) = report.c_estimate {
            let floor = a.powf(-0.5);
            assert!(
                c * (1.0 + 1e-6) >= floor,
                "dim {} m {}: C = {c} below A^(-1/2) = {floor}",
                frame.dim(),
                frame.len()
            );
        }
    }
    println!(
        "criterion 09: pass ({} floor rows and 5 direct estimates all above A^(-1/2))",
        floor_rows.len()
    );
}

#[test]
fn criterion_10_closed_form_spot_checks() {
    let start = Instant::now();
    let (lo, hi) = christensen_bounds(4.0, 9.0, 1.0).expect("valid inputs");
    assert_eq!((lo, hi), (1.0, 16.0));
    let c = perturbed_pr_bound(1.0, 1.0, 1.0 / 64.0).expect("valid inputs");
    assert!((c - 2f64.sqrt()).abs() <= 1e-12, "bound = {c}");
    let rho = balan_rho_sum(2.0, 1.0).expect("valid inputs");
    assert!((rho - 0.004).abs() <= 1e-15, "radius = {rho}");
    assert_eq!(l4_stability_from_a0(2.0, 1.0).expect("valid inputs"), 1.0);
    assert!(start.elapsed() < Duration::from_secs(1));
    println!("criterion 10: pass (four closed-form spot values exact)");
}

#[test]
fn criterion_11_a0_survives_perturbation() {
    let result = default_suite("verify-balan");
    let trials: Vec<_> = result
        .checks
        .iter()
        .filter(|c| c.theorem == Theorem::BalanRho && c.inputs.eps.is_some())
        .collect();
    assert_eq!(trials.len(), 50, "50 seeded trials expected");
    assert!(trials.iter().all(|c| c.pass == Some(true)));
    // Budgets were actually drawn inside the closed-form radius.
    for t in &trials {
        let a0 = t.inputs.a0.expect("baseline a0 recorded");
        let b = t.inputs.b.expect("upper bound recorded");
        let rho = balan_rho_sum(a0, b).expect("a0 > 0");
        let eps = t.inputs.eps.expect("filtered on eps");
        assert!(eps < rho, "trial budget {eps} at or above radius {rho}");
    }
    assert_suite_clean(&result, Duration::from_secs(300));
    println!(
        "criterion 11: pass (50/50 halved-a0 trials inside the radius, {:.1}s)",
        result.wall_time.as_secs_f64()
    );
}
