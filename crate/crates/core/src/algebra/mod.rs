//! Exact arithmetic kernel: rationals, polynomial germs, and matrices.
//!
//! Everything downstream (spectral polynomials, Hitchin components, genus
//! bookkeeping) reduces to the four types here: [`Rat`], [`Poly`],
//! [`BiPoly`] and [`PolyMatrix`]. All arithmetic is exact over the
//! rationals; algorithms that would normally divide (characteristic
//! polynomials, square roots) are arranged so every division is provably
//! exact and verified.

mod bipoly;
mod matrix;
mod poly;
mod rat;

pub use bipoly::BiPoly;
pub use matrix::PolyMatrix;
pub use poly::Poly;
pub use rat::Rat;

use thiserror::Error;

/// Failure modes of the exact kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// A square-matrix operation was applied to a rectangular matrix.
    #[error("NonSquareMatrix: operation requires a square matrix, got {rows}x{cols}")]
    NonSquareMatrix { rows: usize, cols: usize },
    /// The Pfaffian requires an exactly antisymmetric matrix.
    #[error("NotAntisymmetric: pfaffian requires an antisymmetric matrix")]
    NotAntisymmetric,
    /// The Pfaffian of an odd-dimensional matrix is zero by convention
    /// elsewhere; here the dimension is rejected outright.
    #[error("OddDimension: pfaffian requires even dimension, got {dim}")]
    OddDimension { dim: usize },
    /// The polynomial is not a perfect square over the rationals.
    #[error("NotASquare: polynomial is not a perfect square")]
    NotASquare,
}

impl AlgebraError {
    /// Stable machine-readable name, used in CLI error reporting.
    pub fn name(&self) -> &'static str {
        match self {
            AlgebraError::NonSquareMatrix { .. } => "NonSquareMatrix",
            AlgebraError::NotAntisymmetric => "NotAntisymmetric",
            AlgebraError::OddDimension { .. } => "OddDimension",
            AlgebraError::NotASquare => "NotASquare",
        }
    }
}
