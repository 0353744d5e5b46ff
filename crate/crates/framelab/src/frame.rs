//! Frame types and the elementary operations on them.
//!
//! A frame here is a finite spanning family of vectors in R^n or C^n,
//! stored as complex entries regardless of field. The inner product is
//! linear in the first argument and conjugates the second:
//! `<u, v> = sum_i u_i * conj(v_i)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};

/// Scalar field the frame lives over.
///
/// Real frames are stored with complex entries whose imaginary parts are
/// exactly zero; the field drives sampling, search parameterizations, and
/// the phase-distance formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    pub fn is_real(self) -> bool {
        matches!(self, Field::Real)
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Real => write!(f, "real"),
            Field::Complex => write!(f, "complex"),
        }
    }
}

/// A finite sequence of vectors spanning (at most) R^n or C^n.
///
/// Construction validates shape, finiteness, and field membership; it does
/// not check the spanning property, which is a numerical question answered
/// by the frame bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    field: Field,
    dim: usize,
    vectors: Vec<Vec<Complex64>>,
    label: Option<String>,
}

impl Frame {
    pub fn new(field: Field, dim: usize, vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        if dim == 0 {
            return Err(FrameError::ZeroDimension);
        }
        if vectors.is_empty() {
            return Err(FrameError::EmptyFrame);
        }
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(FrameError::VectorLength {
                    index,
                    expected: dim,
                    found: v.len(),
                });
            }
            for (component, z) in v.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(FrameError::NonFiniteEntry { index, component });
                }
                if field.is_real() && z.im != 0.0 {
                    return Err(FrameError::NonRealEntry { index, component });
                }
            }
        }
        Ok(Frame {
            field,
            dim,
            vectors,
            label: None,
        })
    }

    /// Real frame from real coordinate rows.
    pub fn from_real(dim: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        let vectors = rows
            .into_iter()
            .map(|row| row.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
            .collect();
        Frame::new(Field::Real, dim, vectors)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of frame vectors.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn vector(&self, j: usize) -> &[Complex64] {
        &self.vectors[j]
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Analysis coefficients `<x, x_j>` for every frame vector.
    pub fn analyze(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.dim {
            return Err(FrameError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(self.vectors.iter().map(|v| inner(x, v)).collect())
    }

    /// Magnitudes `|<x, x_j>|` of the analysis coefficients.
    pub fn analyze_magnitudes(&self, x: &[Complex64]) -> Result<Vec<f64>> {
        Ok(self.analyze(x)?.into_iter().map(|c| c.norm()).collect())
    }

    /// Frame operator S with entries `S[b, a] = sum_j x_j[b] * conj(x_j[a])`.
    ///
    /// S is Hermitian positive semidefinite, and `<S x, x>` equals the sum
    /// of squared analysis magnitudes of x.
    pub fn frame_operator(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.dim, self.dim, |b, a| {
            self.vectors
                .iter()
                .map(|v| v[b] * v[a].conj())
                .sum::<Complex64>()
        })
    }
}

/// Inner product, conjugating the second argument.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    debug_assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm_sq(u: &[Complex64]) -> f64 {
    u.iter().map(|z| z.norm_sqr()).sum()
}

pub fn norm(u: &[Complex64]) -> f64 {
    norm_sq(u).sqrt()
}

/// `u + c * v`, elementwise.
pub fn add_scaled(u: &[Complex64], v: &[Complex64], c: Complex64) -> Vec<Complex64> {
    debug_assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a + c * b).collect()
}

pub fn scaled(u: &[Complex64], c: Complex64) -> Vec<Complex64> {
    u.iter().map(|a| a * c).collect()
}

/// Scale `u` to unit norm. Errors on (numerically) zero input.
pub fn normalized(u: &[Complex64]) -> Result<Vec<Complex64>> {
    let n2 = norm_sq(u);
    if n2 < crate::tol::ZERO_NORM_SQ {
        return Err(FrameError::NonPositive {
            name: "vector norm",
            value: n2.sqrt(),
        });
    }
    let inv = 1.0 / n2.sqrt();
    Ok(scaled(u, Complex64::new(inv, 0.0)))
}

/// A pair of vectors in the same space, used for witnesses and sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorPair {
    pub x: Vec<Complex64>,
    pub y: Vec<Complex64>,
}

impl VectorPair {
    pub fn new(x: Vec<Complex64>, y: Vec<Complex64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(FrameError::DimensionMismatch {
                expected: x.len(),
                found: y.len(),
            });
        }
        Ok(VectorPair { x, y })
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }
}
