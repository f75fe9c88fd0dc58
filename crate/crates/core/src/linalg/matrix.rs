use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance for Hermiticity checks, measured against the largest
/// entry magnitude of the matrix.
pub const HERMITICITY_REL_TOL: f64 = 1e-10;

/// Dense square complex matrix, row-major storage.
///
/// The universal carrier for states, Hamiltonians, and unitaries. Entries
/// are guaranteed finite by every public constructor.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. Rejects `dim == 0`, a length
    /// mismatch, and non-finite entries.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("matrix dimension must be at least 1"));
        }
        let expected = dim
            .checked_mul(dim)
            .ok_or(Error::DimensionOverflow { a: dim, b: dim })?;
        if entries.len() != expected {
            return Err(Error::invalid(format!(
                "expected {expected} entries for a {dim}x{dim} matrix, got {}",
                entries.len()
            )));
        }
        let m = ComplexMatrix { dim, entries };
        m.require_finite()?;
        Ok(m)
    }

    /// Builds a matrix by evaluating `f(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("matrix dimension must be at least 1"));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self::from_entries(dim, entries)
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let dim = values.len();
        let mut m = Self::zeros(dim);
        for (i, v) in values.iter().enumerate() {
            m.entries[i * dim + i] = *v;
        }
        m
    }

    pub fn diagonal_real(values: &[f64]) -> Self {
        let pairs: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Self::diagonal(&pairs)
    }

    /// Internal constructor for results of arithmetic on already-finite
    /// inputs.
    pub(crate) fn from_raw(dim: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        ComplexMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    fn require_finite(&self) -> Result<()> {
        if self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFinite {
                context: "matrix entry",
            })
        }
    }

    pub(crate) fn require_same_dim(&self, other: &ComplexMatrix) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Tr(AB) as the double sum over A[i,j]·B[j,i]; O(d²), no product matrix
    /// is formed.
    pub fn trace_product(&self, other: &ComplexMatrix) -> Result<Complex64> {
        self.require_same_dim(other)?;
        let d = self.dim;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            let row = self.row(i);
            for (j, a) in row.iter().enumerate() {
                acc += a * other.entries[j * d + i];
            }
        }
        Ok(acc)
    }

    /// Hilbert-Schmidt inner product ⟨A|B⟩ = Tr(A†B) = Σ conj(A[i,j])·B[i,j].
    pub fn hilbert_schmidt_inner(&self, other: &ComplexMatrix) -> Result<Complex64> {
        self.require_same_dim(other)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            acc += a.conj() * b;
        }
        Ok(acc)
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.require_same_dim(other)?;
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            let a_row = self.row(i);
            let out_row = &mut out[i * d..(i + 1) * d];
            for (k, &aik) in a_row.iter().enumerate() {
                let b_row = &other.entries[k * d..(k + 1) * d];
                for (o, &bkj) in out_row.iter_mut().zip(b_row.iter()) {
                    *o += aik * bkj;
                }
            }
        }
        Ok(ComplexMatrix::from_raw(d, out))
    }

    /// A·B† without materializing the adjoint.
    pub fn matmul_adjoint(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.require_same_dim(other)?;
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            let a_row = self.row(i);
            for j in 0..d {
                let b_row = other.row(j);
                let mut acc = Complex64::new(0.0, 0.0);
                for (a, b) in a_row.iter().zip(b_row.iter()) {
                    acc += a * b.conj();
                }
                out[i * d + j] = acc;
            }
        }
        Ok(ComplexMatrix::from_raw(d, out))
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                out[j * d + i] = self.get(i, j).conj();
            }
        }
        ComplexMatrix::from_raw(d, out)
    }

    pub fn transpose(&self) -> ComplexMatrix {
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                out[j * d + i] = self.get(i, j);
            }
        }
        ComplexMatrix::from_raw(d, out)
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.require_same_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a + b)
            .collect();
        Ok(ComplexMatrix::from_raw(self.dim, entries))
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.require_same_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a - b)
            .collect();
        Ok(ComplexMatrix::from_raw(self.dim, entries))
    }

    pub fn scaled(&self, factor: Complex64) -> ComplexMatrix {
        let entries = self.entries.iter().map(|z| z * factor).collect();
        ComplexMatrix::from_raw(self.dim, entries)
    }

    pub fn scaled_real(&self, factor: f64) -> ComplexMatrix {
        self.scaled(Complex64::new(factor, 0.0))
    }

    /// (A + A†)/2. The result is Hermitian bit-for-bit: entry (i,j) and the
    /// conjugate of entry (j,i) are computed from the same two products.
    pub fn symmetrized(&self) -> ComplexMatrix {
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in i..d {
                let z = (self.get(i, j) + self.get(j, i).conj()).scale(0.5);
                out[i * d + j] = z;
                out[j * d + i] = z.conj();
            }
            out[i * d + i].im = 0.0;
        }
        ComplexMatrix::from_raw(d, out)
    }

    /// Kronecker product; output dimension is A.dim · B.dim.
    pub fn kron(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        let da = self.dim;
        let db = other.dim;
        let dim = da
            .checked_mul(db)
            .ok_or(Error::DimensionOverflow { a: da, b: db })?;
        let total = dim
            .checked_mul(dim)
            .ok_or(Error::DimensionOverflow { a: dim, b: dim })?;
        let mut out = vec![Complex64::new(0.0, 0.0); total];
        for i in 0..da {
            for j in 0..da {
                let aij = self.get(i, j);
                for k in 0..db {
                    let dest = (i * db + k) * dim + j * db;
                    let b_row = other.row(k);
                    for (o, &b) in out[dest..dest + db].iter_mut().zip(b_row.iter()) {
                        *o = aij * b;
                    }
                }
            }
        }
        Ok(ComplexMatrix::from_raw(dim, out))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// max |A[i,j] − conj(A[j,i])| over all pairs.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                let dev = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    /// Checks Hermiticity relative to the largest entry magnitude.
    pub fn require_hermitian(&self, rel_tol: f64) -> Result<()> {
        let scale = self.max_abs_entry();
        if scale == 0.0 {
            return Ok(());
        }
        let dev = self.hermitian_deviation() / scale;
        if dev <= rel_tol {
            Ok(())
        } else {
            Err(Error::NotHermitian {
                max_deviation: dev,
                tolerance: rel_tol,
            })
        }
    }

    /// max |(U†U − I)[i,j]|, the unitarity defect.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    acc += self.get(k, i).conj() * self.get(k, j);
                }
                if i == j {
                    acc -= Complex64::new(1.0, 0.0);
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    pub fn require_unitary(&self, tol: f64) -> Result<()> {
        let dev = self.unitarity_deviation();
        if dev <= tol {
            Ok(())
        } else {
            Err(Error::NotUnitary {
                max_deviation: dev,
                tolerance: tol,
            })
        }
    }

    /// max |A[i,j] − B[i,j]|.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        self.require_same_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}
