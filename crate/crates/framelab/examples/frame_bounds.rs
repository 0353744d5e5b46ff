//! Exact frame bounds from the frame operator spectrum.
//!
//! The copies family keeps S = 5I for every k, so its bounds stay pinned
//! at 5 while the vector count grows. A random Gaussian frame is almost
//! surely a frame but nowhere near tight; its spread shows up directly
//! in the bound ratio.
//!
//! Run with `cargo run --example frame_bounds`.

use framelab::bounds::frame_bounds_l2;
use framelab::constructions::{example_3_3, random_gaussian_frame};
use framelab::rng::seeded_rng;
use framelab::{Field, Result};

fn main() -> Result<()> {
    println!("{:>4}  {:>8}  {:>20}  {:>20}  {:>8}", "k", "vectors", "lower", "upper", "B/A");
    for k in [1, 2, 4, 16, 64] {
        let frame = example_3_3(k)?;
        let bounds = frame_bounds_l2(&frame);
        println!(
            "{:>4}  {:>8}  {:>20}  {:>20}  {:>8.5}",
            k,
            frame.len(),
            bounds.lower,
            bounds.upper,
            bounds.upper / bounds.lower
        );
    }

    println!();
    let mut rng = seeded_rng(11);
    for (n, m) in [(2, 6), (3, 9), (5, 20)] {
        let frame = random_gaussian_frame(n, m, Field::Complex, &mut rng)?;
        let bounds = frame_bounds_l2(&frame);
        println!(
            "gaussian dim {n}, {m} vectors: A = {:.6}, B = {:.6}, frame = {}",
            bounds.lower,
            bounds.upper,
            bounds.is_frame()
        );
    }
    Ok(())
}
