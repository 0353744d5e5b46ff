//! Run every verification suite at a reduced scale.
//!
//! Each suite replays one family of claims: exact bound perturbation,
//! stability constant perturbation, survival of phase retrieval, the
//! chain of norm inequalities behind the quartic constant, reduction to
//! orthogonal pairs, the worked tight-frame family, and the two-bound
//! family with vanishing quartic gap. The default scales are heavier;
//! this example trims the trial counts so it finishes in seconds.
//!
//! Run with `cargo run --example verify_all`.

use framelab::report::checks_to_table;
use framelab::suite::{run_suite, SuiteConfig, SUITES};
use framelab::Result;

fn main() -> Result<()> {
    let config = SuiteConfig {
        seed: 5,
        restarts: 10,
        max_iterations: 120,
        grid_resolution: 0.02,
        christensen_trials: 9,
        thm12_trials: 3,
        balan_trials: 3,
        chain_frames: 4,
        chain_pairs_per_frame: 400,
        reduction_pairs: 1500,
    };

    for suite in SUITES.iter().filter(|s| **s != "all") {
        let result = run_suite(suite, &config)?;
        let verdict = if result.passed() { "ok" } else { "FAILED" };
        println!(
            "{suite}: {} checks, {} hard failures, {:.2}s  [{verdict}]",
            result.checks.len(),
            result.hard_failures(),
            result.wall_time.as_secs_f64()
        );
        if !result.passed() {
            print!("{}", checks_to_table(&result.checks));
        }
    }
    Ok(())
}
