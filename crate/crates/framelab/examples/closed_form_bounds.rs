//! Closed-form perturbation bounds, no search involved.
//!
//! Three families of formulas:
//!   - frame bounds survive a perturbation of total squared norm eps < A:
//!       A' >= A (1 - sqrt(eps/A))^2,  B' <= B (1 + sqrt(eps/B))^2
//!   - a stability constant C survives eps < 1/(16 C^4 B):
//!       C' <= C (1 - 4 C^2 sqrt(eps B))^(-1/2)
//!   - a0 > 0 survives inside an explicit radius in eps.
//!
//! Run with `cargo run --example closed_form_bounds`.

use framelab::perturbation::{
    balan_rho_original, balan_rho_sum, christensen_bounds, perturbed_pr_bound,
};
use framelab::Result;

fn main() -> Result<()> {
    let (a, b) = (4.0, 9.0);
    println!("frame bounds A = {a}, B = {b} under budget eps:");
    println!("{:>10}  {:>20}  {:>20}", "eps", "lower'", "upper'");
    for eps in [0.0, 0.25, 1.0, 2.25, 3.9] {
        let (lo, hi) = christensen_bounds(a, b, eps)?;
        println!("{:>10}  {:>20.12}  {:>20.12}", eps, lo, hi);
    }
    println!("budget eps = A is rejected: {:?}", christensen_bounds(a, b, 4.0).unwrap_err());
    println!();

    let (c, bb): (f64, f64) = (1.0, 1.0);
    let threshold = 1.0 / (16.0 * c.powi(4) * bb);
    println!("stability constant C = {c}, B = {bb}, threshold = {threshold}:");
    println!("{:>10}  {:>20}", "eps", "C'");
    for eps in [1e-6, 1e-3, 1.0 / 64.0, 0.05] {
        println!("{:>10}  {:>20.12}", eps, perturbed_pr_bound(c, bb, eps)?);
    }
    println!(
        "eps at the threshold is rejected: {:?}",
        perturbed_pr_bound(c, bb, threshold).unwrap_err()
    );
    println!();

    // Two radii guaranteeing that phase retrieval survives: the first is
    // for a budget on max_j |delta_j|, the second on sum_j |delta_j|^2.
    let (a0, m) = (2.0, 4);
    println!("a0 = {a0}, B = {bb}, m = {m}:");
    println!("  per-vector radius = {}", balan_rho_original(a0, bb, m)?);
    println!("  total budget radius = {}", balan_rho_sum(a0, bb)?);
    Ok(())
}
