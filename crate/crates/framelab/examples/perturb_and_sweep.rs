//! Budgeted perturbations and the theorem check sweep.
//!
//! `perturb_frame` spends its squared-norm budget exactly, in one of
//! three ways: spread isotropically, dumped on a single vector, or aimed
//! against the worst stability witness. `perturbation_sweep` then replays
//! the closed-form predictions against measurements on the perturbed
//! frame, one CSV row per (theorem, budget, trial).
//!
//! Run with `cargo run --example perturb_and_sweep`.

use framelab::bounds::frame_bounds_l2;
use framelab::constructions::example_3_3;
use framelab::frame::norm_sq;
use framelab::perturbation::{perturb_frame, perturbation_sweep, PerturbMode, PerturbationPlan};
use framelab::report::checks_to_csv;
use framelab::rng::substream;
use framelab::stability::{best_stability_estimate, SearchConfig};
use framelab::Result;

fn main() -> Result<()> {
    let frame = example_3_3(2)?;
    let eps = 0.01;

    let witness_config = SearchConfig { grid_resolution: 0.02, ..SearchConfig::default() };
    let witness = best_stability_estimate(&frame, 2.0, &witness_config)?.witness;
    let modes = [
        PerturbMode::RandomIsotropic,
        PerturbMode::SingleVector,
        PerturbMode::AdversarialWitness(witness),
    ];
    for (i, mode) in modes.into_iter().enumerate() {
        let name = mode.name();
        let plan = PerturbationPlan::new(eps, mode).with_seed(5);
        let mut rng = substream(5, i as u64);
        let perturbed = perturb_frame(&frame, &plan, &mut rng)?;
        let spent: f64 = frame
            .vectors()
            .iter()
            .zip(perturbed.vectors())
            .map(|(x, y)| {
                let delta: Vec<_> = x.iter().zip(y).map(|(a, b)| b - a).collect();
                norm_sq(&delta)
            })
            .sum();
        let bounds = frame_bounds_l2(&perturbed);
        println!(
            "{name:<13} spent = {spent:.17}  perturbed bounds = ({:.6}, {:.6})",
            bounds.lower, bounds.upper
        );
    }

    println!();
    let config = SearchConfig {
        restarts: 16,
        max_iterations: 200,
        grid_resolution: 0.02,
        seed: 1,
        ..SearchConfig::default()
    };
    let checks = perturbation_sweep(&frame, &[0.001, 0.01], 2, 2.0, &config)?;
    print!("{}", checks_to_csv(&checks));
    Ok(())
}
