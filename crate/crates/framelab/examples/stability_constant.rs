//! Phase retrieval stability constants, certified in dimension 2.
//!
//! The headline phenomenon: one family of frames whose l2 stability
//! constant stays bounded in k while the l4 constant grows like k^(1/4).
//! Dimension 2 admits a certified branch-and-bound search, so the numbers
//! below are two-sided enclosures, not just the best witness found.
//!
//! Run with `cargo run --example stability_constant`.

use framelab::constructions::example_3_3;
use framelab::stability::{best_stability_estimate, SearchConfig};
use framelab::Result;

fn main() -> Result<()> {
    // 10% certificates: the p = 4 landscape at large k clusters near its
    // minimum, which makes tight certificates disproportionately slow.
    // The printed constants come from the polished witness and do not
    // move with the certificate width.
    let config = SearchConfig { grid_resolution: 0.1, ..SearchConfig::default() };

    println!("{:>4}  {:>12}  {:>12}  {:>14}", "k", "C at p=2", "C at p=4", "k^(1/4)");
    for k in [1, 4, 16, 64] {
        let frame = example_3_3(k)?;
        let c2 = best_stability_estimate(&frame, 2.0, &config)?;
        let c4 = best_stability_estimate(&frame, 4.0, &config)?;
        println!(
            "{:>4}  {:>12.6}  {:>12.6}  {:>14.6}",
            k,
            c2.c_estimate.expect("family does phase retrieval"),
            c4.c_estimate.expect("family does phase retrieval"),
            (k as f64).powf(0.25)
        );
    }

    // The k = 16 witness shows where the l4 constant lives: a pair aligned
    // with the scaled basis copies, where fourth powers crush the gap.
    let frame = example_3_3(16)?;
    let report = best_stability_estimate(&frame, 4.0, &config)?;
    println!();
    println!("k = 16, p = 4 witness (certified = {}):", report.certified);
    println!("  min ratio        = {}", report.min_ratio);
    if let Some(lower) = report.certified_lower_ratio {
        println!("  certified >=     = {lower}");
    }
    println!("  x = {:?}", report.witness.x);
    println!("  y = {:?}", report.witness.y);
    Ok(())
}
