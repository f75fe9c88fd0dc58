//! Cyclic Jacobi eigensolver for complex Hermitian matrices and the matrix
//! functions built on top of it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::matrix::{ComplexMatrix, HERMITICITY_REL_TOL};

/// Sweep until the off-diagonal Frobenius mass drops below this fraction of
/// the full Frobenius norm.
pub const EIG_OFFDIAG_REL_TOL: f64 = 1e-12;

/// Hard cap on cyclic sweeps; convergence is quadratic, so ~10 suffice even
/// at d = 512.
pub const EIG_MAX_SWEEPS: usize = 100;

/// Eigenvalues above −PSD_EIG_TOL count as numerically nonnegative.
pub const PSD_EIG_TOL: f64 = 1e-9;

/// Spectral decomposition of a Hermitian matrix: ascending real eigenvalues
/// paired with orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Column k is the unit eigenvector for eigenvalue k.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    /// V diag(f(λ)) V† for a real-valued spectral function. The result is
    /// symmetrized, so it is Hermitian bit-for-bit.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
        let weights: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .map(|&l| Complex64::new(f(l), 0.0))
            .collect();
        Ok(self.synthesize(&weights)?.symmetrized())
    }

    /// V diag(f(λ)) V† for a complex-valued spectral function, e.g. the
    /// unitary exponential λ ↦ e^{−itλ}.
    pub fn apply_complex(&self, f: impl Fn(f64) -> Complex64) -> Result<ComplexMatrix> {
        let weights: Vec<Complex64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        self.synthesize(&weights)
    }

    /// Σ_k w_k v_k v_k†; rank-one accumulation over contiguous eigenvector
    /// rows of the transposed basis.
    fn synthesize(&self, weights: &[Complex64]) -> Result<ComplexMatrix> {
        if weights.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
            return Err(Error::NonFinite {
                context: "spectral function value",
            });
        }
        let d = self.dim();
        let vt = self.eigenvectors.transpose();
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for k in 0..d {
            let w = weights[k];
            if w.re == 0.0 && w.im == 0.0 {
                continue;
            }
            let vec_k = vt.row(k);
            for i in 0..d {
                let scale = w * vec_k[i];
                let out_row = &mut out[i * d..(i + 1) * d];
                for (o, v) in out_row.iter_mut().zip(vec_k.iter()) {
                    *o += scale * v.conj();
                }
            }
        }
        Ok(ComplexMatrix::from_raw(d, out))
    }
}

/// Full spectral decomposition. The input must be Hermitian within the
/// relative tolerance; it is symmetrized before iteration so that file
/// round-trip noise does not matter.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<Spectrum> {
    h.require_hermitian(HERMITICITY_REL_TOL)?;
    let sym = h.symmetrized();
    let d = sym.dim();
    let (diag, vt) = jacobi(&sym, true)?;
    let vt = vt.expect("vectors requested");

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| diag[k]).collect();
    let mut vecs = vec![Complex64::new(0.0, 0.0); d * d];
    for (col, &k) in order.iter().enumerate() {
        for i in 0..d {
            vecs[i * d + col] = vt[k * d + i];
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: ComplexMatrix::from_raw(d, vecs),
    })
}

/// Eigenvalues only (ascending); skips eigenvector accumulation.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    h.require_hermitian(HERMITICITY_REL_TOL)?;
    let sym = h.symmetrized();
    let (mut diag, _) = jacobi(&sym, false)?;
    diag.sort_by(f64::total_cmp);
    Ok(diag)
}

/// V diag(f(λ)) V†.
pub fn hermitian_apply(h: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    hermitian_eig(h)?.apply(f)
}

/// V diag(f(λ)) V† for complex-valued f.
pub fn hermitian_apply_complex(
    h: &ComplexMatrix,
    f: impl Fn(f64) -> Complex64,
) -> Result<ComplexMatrix> {
    hermitian_eig(h)?.apply_complex(f)
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [−PSD_EIG_TOL, 0) are clamped to zero; anything lower is
/// rejected.
pub fn psd_sqrt(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spectrum = hermitian_eig(h)?;
    let min = spectrum.min_eigenvalue();
    if min < -PSD_EIG_TOL {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: min,
            tolerance: PSD_EIG_TOL,
        });
    }
    spectrum.apply(|l| l.max(0.0).sqrt())
}

fn off_diagonal_norm(a: &[Complex64], d: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..d {
        for j in i + 1..d {
            acc += a[i * d + j].norm_sqr();
        }
    }
    (2.0 * acc).sqrt()
}

/// Cyclic Jacobi sweeps on a bitwise-Hermitian input. Returns the diagonal
/// (unsorted eigenvalues) and, when requested, the accumulated rotations as
/// rows of Vᵀ (row k holds eigenvector k of the unsorted diagonal).
fn jacobi(h: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<Vec<Complex64>>)> {
    let d = h.dim();
    let mut a: Vec<Complex64> = h.entries().to_vec();
    let mut vt: Option<Vec<Complex64>> = if want_vectors {
        let mut v = vec![Complex64::new(0.0, 0.0); d * d];
        for k in 0..d {
            v[k * d + k] = Complex64::new(1.0, 0.0);
        }
        Some(v)
    } else {
        None
    };

    let diagonal = |a: &[Complex64]| -> Vec<f64> { (0..d).map(|i| a[i * d + i].re).collect() };

    if d == 1 {
        return Ok((diagonal(&a), vt));
    }

    let scale = h.frobenius_norm();
    if scale == 0.0 {
        return Ok((diagonal(&a), vt));
    }
    let target = EIG_OFFDIAG_REL_TOL * scale;
    // If every off-diagonal entry is below target/d, the whole off-diagonal
    // mass is below target; rotations on smaller entries are wasted work.
    let rotation_threshold = target / d as f64;

    for _ in 0..EIG_MAX_SWEEPS {
        if off_diagonal_norm(&a, d) < target {
            return Ok((diagonal(&a), vt));
        }
        let mut rotated = false;
        for p in 0..d - 1 {
            for q in p + 1..d {
                let apq = a[p * d + q];
                let r = apq.norm();
                if r < rotation_threshold {
                    continue;
                }
                rotated = true;

                let app = a[p * d + p].re;
                let aqq = a[q * d + q].re;
                let tau = (app - aqq) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let phase = apq / r; // e^{iφ} with a_pq = r·e^{iφ}
                let sp = phase.scale(s); // s·e^{iφ}
                let spc = sp.conj(); // s·e^{−iφ}

                let new_app = app * c * c + 2.0 * r * s * c + aqq * s * s;
                let new_aqq = app * s * s - 2.0 * r * s * c + aqq * c * c;

                // Rows p and q; columns follow by conjugate mirroring.
                {
                    let (head, tail) = a.split_at_mut(q * d);
                    let row_p = &mut head[p * d..p * d + d];
                    let row_q = &mut tail[..d];
                    for (x, y) in row_p.iter_mut().zip(row_q.iter_mut()) {
                        let xp = *x;
                        *x = xp.scale(c) + sp * *y;
                        *y = y.scale(c) - spc * xp;
                    }
                }
                for k in 0..d {
                    if k == p || k == q {
                        continue;
                    }
                    a[k * d + p] = a[p * d + k].conj();
                    a[k * d + q] = a[q * d + k].conj();
                }
                a[p * d + p] = Complex64::new(new_app, 0.0);
                a[q * d + q] = Complex64::new(new_aqq, 0.0);
                a[p * d + q] = Complex64::new(0.0, 0.0);
                a[q * d + p] = Complex64::new(0.0, 0.0);

                if let Some(v) = vt.as_mut() {
                    let (head, tail) = v.split_at_mut(q * d);
                    let row_p = &mut head[p * d..p * d + d];
                    let row_q = &mut tail[..d];
                    for (x, y) in row_p.iter_mut().zip(row_q.iter_mut()) {
                        let xp = *x;
                        *x = xp.scale(c) + spc * *y;
                        *y = y.scale(c) - sp * xp;
                    }
                }
            }
        }
        if !rotated {
            return Ok((diagonal(&a), vt));
        }
    }

    let off = off_diagonal_norm(&a, d);
    if off < target {
        Ok((diagonal(&a), vt))
    } else {
        Err(Error::NoConvergence {
            sweeps: EIG_MAX_SWEEPS,
            off_diagonal: off,
        })
    }
}
