//! Numerical tolerances used across the crate.
//!
//! Every constant documents what it guards and why the value is safe at
//! `f64` precision. Tolerances are relative unless the name says otherwise.

/// Eigenvalue computations on Hermitian matrices of the sizes used here
/// (n <= 64) are accurate to a small multiple of machine epsilon times the
/// spectral norm. 1e-10 leaves two orders of magnitude of slack.
pub const EIGEN_REL: f64 = 1e-10;

/// Identities that hold exactly in exact arithmetic (operator entries,
/// analysis coefficients, algebraic rearrangements) are checked to 1e-12
/// relative, which is ~500 ulps at unit scale.
pub const EXACT_REL: f64 = 1e-12;

/// Absolute floor used when a relative tolerance would degenerate because
/// the reference value is itself zero.
pub const ABS_FLOOR: f64 = 1e-12;

/// A squared norm below this is treated as the zero vector when sampling
/// or normalizing. Draws this small do not occur with standard Gaussian
/// components; the guard only protects against degenerate user input.
pub const ZERO_NORM_SQ: f64 = 1e-24;

/// Lower frame bound below this (relative to the upper bound) means the
/// vectors do not span the space at working precision.
pub const FRAME_RANK_REL: f64 = 1e-12;

/// Default relative gap at which the certified 2-d search stops: the
/// returned interval [lower, best] satisfies best - lower <= BB_REL_GAP * best.
pub const BB_REL_GAP: f64 = 5e-3;

/// If the best objective value seen falls below this floor the infimum is
/// declared numerically zero and the search stops: no positive stability
/// constant is certified.
pub const BB_ZERO_FLOOR: f64 = 1e-8;

/// Step size floor for the deterministic coordinate polish that refines a
/// search minimum. 1e-9 in the angle parameters resolves the objective to
/// ~1e-12 near a regular minimum.
pub const POLISH_STEP_FLOOR: f64 = 1e-9;

/// Step floor for the final witness polish of the stability searches.
/// Much deeper than POLISH_STEP_FLOOR: on frames that fail phase
/// retrieval the ratio is conical near its zero, so the polish must walk
/// the witness to parameter distance ~1e-13 to push the ratio below the
/// 1e-10 failure threshold. The objectives stay resolvable there because
/// the cancellation error of a single gap term is ~1e-16.
pub const DEEP_POLISH_FLOOR: f64 = 1e-13;

/// Iteration cap for the projected subgradient descent used by the
/// high-dimensional searches. Descent on these objectives stalls well
/// before this many steps.
pub const DESCENT_MAX_ITERS: usize = 400;

/// Multiplicative backtracking factor for descent line searches.
pub const BACKTRACK: f64 = 0.5;

/// Smallest descent step worth taking relative to the initial step.
pub const DESCENT_STEP_FLOOR: f64 = 1e-10;
