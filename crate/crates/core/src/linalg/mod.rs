//! Dense complex matrix kernels: Hermitian spectral decomposition, matrix
//! functions, Kronecker products, and the O(d²) trace-product used by the
//! fast fidelity path.

mod eig;
mod matrix;

pub use eig::{
    hermitian_apply, hermitian_apply_complex, hermitian_eig, hermitian_eigenvalues, psd_sqrt,
    Spectrum, EIG_MAX_SWEEPS, EIG_OFFDIAG_REL_TOL, PSD_EIG_TOL,
};
pub use matrix::{ComplexMatrix, HERMITICITY_REL_TOL};
