//! Searched p-frame bounds on the unit sphere.
//!
//! For p other than 2 the extrema of x -> (sum |<x, x_j>|^p)^(1/p) have no
//! spectral shortcut, so they are located by multistart search (plus an
//! exhaustive scan in dimension 2). The table shows both bounds of one
//! frame across p; p = 2 is computed exactly for reference.
//!
//! Run with `cargo run --example p_frame_bounds`.

use framelab::bounds::{frame_bounds_l2, p_frame_bounds};
use framelab::constructions::example_3_3;
use framelab::stability::SearchConfig;
use framelab::Result;

fn main() -> Result<()> {
    let frame = example_3_3(4)?;
    println!("frame: {}", frame.label().unwrap_or("unnamed"));

    let exact = frame_bounds_l2(&frame);
    println!("exact p = 2 (eigenvalues, squared scale): A = {}, B = {}", exact.lower, exact.upper);
    println!();

    let config = SearchConfig::p_bounds_default().with_seed(3);
    println!("{:>4}  {:>20}  {:>20}", "p", "lower", "upper");
    for p in [1.0, 2.0, 3.0, 4.0, 6.0] {
        let bounds = p_frame_bounds(&frame, p, &config)?;
        println!("{:>4}  {:>20.12}  {:>20.12}", p, bounds.lower, bounds.upper);
    }

    // Searched p = 2 bounds are on the norm scale; squaring them recovers
    // the eigenvalue bounds up to search slack.
    let searched = p_frame_bounds(&frame, 2.0, &config)?;
    println!();
    println!(
        "p = 2 cross-check: searched^2 = ({:.9}, {:.9}) vs exact ({}, {})",
        searched.lower * searched.lower,
        searched.upper * searched.upper,
        exact.lower,
        exact.upper
    );
    Ok(())
}
