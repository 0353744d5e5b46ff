//! The quartic stability constant a0 and what it buys.
//!
//! a0 is the infimum over nonzero pairs of
//!   sum_j (|<x,x_j>|^2 - |<y,x_j>|^2)^2  /  ((|x|^2+|y|^2)^2 - 4|<x,y>|^2).
//! It is positive exactly when the frame does phase retrieval, and it
//! converts into an l4 stability bound C4 <= (2B/a0)^(1/2).
//!
//! Run with `cargo run --example balan_a0`.

use framelab::bounds::{frame_bounds_l2, p_frame_bounds};
use framelab::constructions::{basis_frame, example_3_3, random_gaussian_frame};
use framelab::rng::seeded_rng;
use framelab::stability::{estimate_a0, l4_stability_from_a0, SearchConfig};
use framelab::{Field, Frame, Result};

fn report(name: &str, frame: &Frame, config: &SearchConfig) -> Result<()> {
    let a0 = estimate_a0(frame, config)?;
    let b = frame_bounds_l2(frame).upper;
    print!("{name}: a0 = {:.10}", a0.a0_estimate);
    if a0.a0_estimate > 1e-8 {
        println!(", implied C4 <= {:.6}", l4_stability_from_a0(a0.a0_estimate, b)?);
    } else {
        println!("  (no phase retrieval: witness pair is indistinguishable)");
    }
    Ok(())
}

fn main() -> Result<()> {
    let config = SearchConfig { restarts: 48, ..SearchConfig::default() };

    report("copies family, k=1 ", &example_3_3(1)?, &config)?;
    report("copies family, k=16", &example_3_3(16)?, &config)?;

    // A real basis never does phase retrieval: x and y that differ by a
    // sign pattern have identical measurement magnitudes.
    report("real basis, dim 3  ", &basis_frame(3, Field::Real)?, &config)?;

    let mut rng = seeded_rng(7);
    report(
        "gaussian dim 3, m=12",
        &random_gaussian_frame(3, 12, Field::Complex, &mut rng)?,
        &config,
    )?;

    // a0 never exceeds the fourth power of the lower quartic frame bound:
    // plug y = 0 into the ratio and the denominator becomes |x|^4.
    let frame = example_3_3(4)?;
    let a0 = estimate_a0(&frame, &config)?;
    let a4 = p_frame_bounds(&frame, 4.0, &config)?.lower;
    println!();
    println!("sanity: a0 = {:.10} <= A4^4 = {:.10}", a0.a0_estimate, a4.powi(4));
    Ok(())
}
