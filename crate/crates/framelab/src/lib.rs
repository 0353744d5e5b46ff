//! Numerical toolkit for finite frames: frame bounds, phase retrieval
//! stability constants, and perturbation bound verification.
//!
//! The library is the product; the `framelab` binary is a thin file-based
//! front end over it. Start with the examples, each of which is a small
//! self-contained program:
//!
//! - `frame_bounds`: exact bounds from the frame operator spectrum
//! - `p_frame_bounds`: searched bounds for exponents other than 2
//! - `stability_constant`: certified stability constants in dimension 2,
//!   and a family whose quartic constant grows while the quadratic one
//!   stays bounded
//! - `balan_a0`: the quartic constant a0 and the stability bound it implies
//! - `closed_form_bounds`: the perturbation formulas, no search involved
//! - `perturb_and_sweep`: budgeted perturbations and the theorem check
//!   sweep with its CSV output
//! - `construct_frames`: built-in families and the frame file format
//! - `verify_all`: every verification suite at a reduced scale
//!
//! Run one with `cargo run --example <name>`. The same capabilities are
//! scriptable through the binary: `framelab construct | bounds |
//! stability | a0 | perturb | sweep | verify`.
//!
//! Everything randomized flows from one explicit seed and replays
//! bit-identically; see [`rng`] and the `seed` fields on the config
//! structs.

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod frame;
pub mod grid2d;
pub mod io;
pub mod metric;
pub mod perturbation;
pub mod report;
pub mod rng;
pub mod sphere;
pub mod stability;
pub mod suite;
pub mod tol;

pub use error::{FrameError, Result};
pub use frame::{Field, Frame, VectorPair};
