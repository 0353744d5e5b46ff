//! Deterministic descent on unit spheres.
//!
//! The searches in this crate minimize objectives over unit vectors of R^n
//! or C^n. The sphere is treated as a real manifold: a step projects the
//! Euclidean gradient onto the tangent space, walks, and renormalizes.
//! Gradients use the convention `df(x; h) = Re <h, grad f(x)>`, which for
//! real inputs is the ordinary gradient.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::frame::{add_scaled, inner, norm_sq, normalized, Field};
use crate::tol;

/// Uniformly random unit vector (Haar on the sphere of the given field).
pub fn random_unit(dim: usize, field: Field, rng: &mut impl Rng) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = match field {
                    Field::Real => 0.0,
                    Field::Complex => rng.sample(StandardNormal),
                };
                Complex64::new(re, im)
            })
            .collect();
        if let Ok(u) = normalized(&v) {
            return u;
        }
    }
}

/// Project `g` onto the tangent space of the unit sphere at `x`
/// (`||x|| = 1`), staying real when the field is Real.
pub fn tangent_project(field: Field, x: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    let radial = inner(g, x).re;
    let mut t = add_scaled(g, x, Complex64::new(-radial, 0.0));
    if field.is_real() {
        for z in &mut t {
            z.im = 0.0;
        }
    }
    t
}

/// Minimize `f` on the unit sphere starting from `start`, using projected
/// gradient steps with a backtracking line search. Returns the best value
/// and point found; the start itself is the fallback.
pub fn descend_on_sphere(
    field: Field,
    f: &dyn Fn(&[Complex64]) -> f64,
    grad: &dyn Fn(&[Complex64]) -> Vec<Complex64>,
    start: &[Complex64],
    max_iters: usize,
) -> (f64, Vec<Complex64>) {
    let mut x = match normalized(start) {
        Ok(x) => x,
        Err(_) => return (f(start), start.to_vec()),
    };
    let mut fx = f(&x);
    let mut step = 0.5;
    for _ in 0..max_iters {
        let t = tangent_project(field, &x, &grad(&x));
        let t_norm_sq = norm_sq(&t);
        if t_norm_sq < 1e-24 {
            break;
        }
        let mut accepted = false;
        while step >= tol::DESCENT_STEP_FLOOR {
            let trial = add_scaled(&x, &t, Complex64::new(-step, 0.0));
            let Ok(trial) = normalized(&trial) else { break };
            let f_trial = f(&trial);
            // Armijo condition on the tangent gradient.
            if f_trial <= fx - 1e-4 * step * t_norm_sq {
                x = trial;
                fx = f_trial;
                step *= 1.5;
                accepted = true;
                break;
            }
            step *= tol::BACKTRACK;
        }
        if !accepted {
            break;
        }
    }
    (fx, x)
}

/// Deterministic coordinate pattern polish on the sphere: probe each real
/// coordinate direction with a shrinking step, renormalizing after every
/// probe. Cleans up the last digits after `descend_on_sphere` stalls.
pub fn polish_on_sphere(
    field: Field,
    f: &dyn Fn(&[Complex64]) -> f64,
    start: &[Complex64],
    initial_step: f64,
) -> (f64, Vec<Complex64>) {
    let mut x = match normalized(start) {
        Ok(x) => x,
        Err(_) => return (f(start), start.to_vec()),
    };
    let mut fx = f(&x);
    let dim = x.len();
    let mut h = initial_step;
    while h > tol::POLISH_STEP_FLOOR {
        let mut improved = false;
        for i in 0..dim {
            let units: &[Complex64] = if field.is_real() {
                &[Complex64::new(1.0, 0.0)]
            } else {
                &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]
            };
            for unit in units {
                for sign in [1.0, -1.0] {
                    let mut trial = x.clone();
                    trial[i] += sign * h * unit;
                    let Ok(trial) = normalized(&trial) else { continue };
                    let f_trial = f(&trial);
                    if f_trial < fx {
                        x = trial;
                        fx = f_trial;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (fx, x)
}

/// Multistart minimization: descend from every start, polish the best
/// result, and return the winner. `starts` must be nonempty.
pub fn multistart_minimize(
    field: Field,
    f: &dyn Fn(&[Complex64]) -> f64,
    grad: &dyn Fn(&[Complex64]) -> Vec<Complex64>,
    starts: &[Vec<Complex64>],
    max_iters: usize,
) -> (f64, Vec<Complex64>) {
    assert!(!starts.is_empty(), "multistart needs at least one start");
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for start in starts {
        let (value, point) = descend_on_sphere(field, f, grad, start, max_iters);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, point));
        }
    }
    let (_, point) = best.expect("nonempty starts");
    polish_on_sphere(field, f, &point, 1e-2)
}

/// Negated-objective wrapper so maximization reuses the minimizer.
pub fn negate<'a>(f: &'a dyn Fn(&[Complex64]) -> f64) -> impl Fn(&[Complex64]) -> f64 + 'a {
    move |x| -f(x)
}
