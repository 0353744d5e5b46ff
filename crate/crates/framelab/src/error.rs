//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors produced by frame construction, searches, and the verification
/// harness.
#[derive(Debug, Error)]
pub enum FrameError {
    #[error("frame must contain at least one vector")]
    EmptyFrame,

    #[error("frame dimension must be at least 1")]
    ZeroDimension,

    #[error("vector {index} has length {found}, expected dimension {expected}")]
    VectorLength {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("vector has length {found}, expected dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("real frame has a nonzero imaginary part at vector {index}, component {component}")]
    NonRealEntry { index: usize, component: usize },

    #[error("non-finite entry at vector {index}, component {component}")]
    NonFiniteEntry { index: usize, component: usize },

    #[error("exponent p must be >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("not a frame: lower l2 frame bound {0:.3e} is numerically zero")]
    NotAFrame(f64),

    #[error("phase distance is zero: the vectors agree up to a unimodular factor")]
    ZeroPhaseDistance,

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("scale split must lie in [0, 1], got {0}")]
    InvalidSplit(f64),

    #[error("fill fraction must lie in (0, 1], got {0}")]
    InvalidFillFraction(f64),

    #[error("perturbation budget {epsilon} must be strictly below the lower frame bound {lower}")]
    EpsilonAboveLowerBound { epsilon: f64, lower: f64 },

    #[error("epsilon {epsilon} is at or above the stability threshold {threshold}")]
    EpsilonAboveThreshold { epsilon: f64, threshold: f64 },

    #[error("operation requires dimension {expected}, frame has dimension {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("need at least as many vectors as the dimension: m = {m} < n = {n}")]
    TooFewVectors { m: usize, n: usize },

    #[error("copy count k must be >= 1")]
    InvalidCopyCount,

    #[error("base frame is not Parseval: max deviation from the identity is {0:.3e}")]
    NotParseval(f64),

    #[error("frame fails phase retrieval numerically (search ratio {0:.3e})")]
    PhaseRetrievalFails(f64),

    #[error("frame file: {0}")]
    Parse(String),

    #[error("unknown suite '{name}'; available suites: {available}")]
    UnknownSuite { name: String, available: String },

    #[error("invalid frame bounds: lower {lower} exceeds upper {upper}")]
    InvalidBounds { lower: f64, upper: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FrameError>;
