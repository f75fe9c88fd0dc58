//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by matrix kernels, state constructors, and fidelity
/// measures. Validation variants carry the violated quantity so callers
/// can report the magnitude of the defect.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian: max |H[i,j] - conj(H[j,i])| = {max_deviation:.3e} (relative tolerance {tolerance:.1e})")]
    NotHermitian { max_deviation: f64, tolerance: f64 },

    #[error("not positive semidefinite: eigenvalue {min_eigenvalue:.3e} below -{tolerance:.1e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64, tolerance: f64 },

    #[error("trace is {trace:.17} instead of 1 (tolerance {tolerance:.1e})")]
    TraceNotOne { trace: f64, tolerance: f64 },

    #[error("vector norm is {norm:.17}, expected 1 within {tolerance:.1e}")]
    NotNormalized { norm: f64, tolerance: f64 },

    #[error("matrix is not unitary: max |U\u{2020}U - I| = {max_deviation:.3e} (tolerance {tolerance:.1e})")]
    NotUnitary { max_deviation: f64, tolerance: f64 },

    #[error("non-finite value encountered in {context}")]
    NonFinite { context: &'static str },

    #[error("operator fidelity undefined for zero operator")]
    ZeroOperator,

    #[error("Tr(\u{3c1}0\u{3c1}1) has imaginary residue {magnitude:.3e} beyond {tolerance:.1e}; inputs are not valid states")]
    ImaginaryResidue { magnitude: f64, tolerance: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal mass {off_diagonal:.3e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("dimension overflow: {a} x {b} exceeds addressable size")]
    DimensionOverflow { a: usize, b: usize },

    #[error("{0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
