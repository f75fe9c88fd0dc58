//! Density matrices, Hamiltonians, and pure states with invariant-checked
//! constructors.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, hermitian_eigenvalues, ComplexMatrix, HERMITICITY_REL_TOL};
use crate::states::random::RandomSource;

/// Density matrices of dimension 1 are excluded: the F2 rescaling
/// r = 1/(d−1) is singular there and a one-level system carries no state.
pub const MIN_STATE_DIM: usize = 2;

/// Validation thresholds for [`DensityMatrix::from_matrix_with`].
#[derive(Debug, Clone, Copy)]
pub struct StateTolerances {
    /// Relative Hermiticity tolerance (against the largest entry).
    pub hermiticity: f64,
    /// Most negative admissible eigenvalue.
    pub eigenvalue: f64,
    /// Absolute trace deviation from 1.
    pub trace: f64,
}

impl Default for StateTolerances {
    fn default() -> Self {
        StateTolerances {
            hermiticity: HERMITICITY_REL_TOL,
            eigenvalue: 1e-9,
            trace: 1e-10,
        }
    }
}

/// Validated quantum state: Hermitian, positive semidefinite, unit trace.
/// The stored matrix is always symmetrized, hence Hermitian bit-for-bit.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Full validation gate used for untrusted (e.g. file-loaded) input:
    /// Hermiticity, spectrum, and trace are all checked, then the matrix is
    /// symmetrized.
    pub fn from_matrix(m: ComplexMatrix) -> Result<Self> {
        Self::from_matrix_with(m, StateTolerances::default())
    }

    pub fn from_matrix_with(m: ComplexMatrix, tol: StateTolerances) -> Result<Self> {
        if m.dim() < MIN_STATE_DIM {
            return Err(Error::invalid(format!(
                "density matrix dimension must be at least {MIN_STATE_DIM}, got {}",
                m.dim()
            )));
        }
        m.require_hermitian(tol.hermiticity)?;
        let sym = m.symmetrized();

        let trace = sym.trace().re;
        if (trace - 1.0).abs() > tol.trace {
            return Err(Error::TraceNotOne {
                trace,
                tolerance: tol.trace,
            });
        }

        let eigenvalues = hermitian_eigenvalues(&sym)?;
        let min = eigenvalues[0];
        if min < -tol.eigenvalue {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min,
                tolerance: tol.eigenvalue,
            });
        }

        let d = sym.dim() as f64;
        let purity = purity_of(&sym);
        if !(1.0 / d - 1e-9..=1.0 + 1e-9).contains(&purity) {
            return Err(Error::invalid(format!(
                "purity {purity} outside [1/d, 1] for d = {d}"
            )));
        }

        Ok(DensityMatrix { matrix: sym })
    }

    /// Cheap gate for matrices that are positive semidefinite by
    /// construction (convex mixtures, GG†, spectral synthesis with
    /// nonnegative weights, unitary conjugation). Hermiticity and trace are
    /// still checked; the O(d³) eigenvalue scan is skipped.
    pub(crate) fn trusted(m: ComplexMatrix) -> Result<Self> {
        if m.dim() < MIN_STATE_DIM {
            return Err(Error::invalid(format!(
                "density matrix dimension must be at least {MIN_STATE_DIM}, got {}",
                m.dim()
            )));
        }
        m.require_hermitian(HERMITICITY_REL_TOL)?;
        let sym = m.symmetrized();
        let trace = sym.trace().re;
        if (trace - 1.0).abs() > 1e-10 {
            return Err(Error::TraceNotOne {
                trace,
                tolerance: 1e-10,
            });
        }
        Ok(DensityMatrix { matrix: sym })
    }

    /// Maximally mixed state I/d.
    pub fn maximally_mixed(d: usize) -> Result<Self> {
        if d < MIN_STATE_DIM {
            return Err(Error::invalid(format!(
                "maximally mixed state needs d >= {MIN_STATE_DIM}, got {d}"
            )));
        }
        DensityMatrix::trusted(ComplexMatrix::identity(d).scaled_real(1.0 / d as f64))
    }

    /// Convex combination Σ wᵢ ρᵢ. Weights must be nonnegative and sum to 1
    /// within 1e-12; all states must share one dimension.
    pub fn mix(weights: &[f64], states: &[DensityMatrix]) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::invalid(
                "mix needs matching, non-empty weight and state lists",
            ));
        }
        if weights.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
            return Err(Error::invalid("mixture weights must be nonnegative"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!(
                "mixture weights sum to {total}, expected 1 within 1e-12"
            )));
        }
        let d = states[0].dim();
        for s in states {
            if s.dim() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: s.dim(),
                });
            }
        }
        let mut acc = ComplexMatrix::zeros(d);
        for (w, s) in weights.iter().zip(states.iter()) {
            acc = acc.add(&s.matrix.scaled_real(*w))?;
        }
        DensityMatrix::trusted(acc)
    }

    /// Tensor product ρ_a ⊗ ρ_b.
    pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        DensityMatrix::trusted(a.matrix.kron(&b.matrix)?)
    }

    /// UρU† for a unitary U (checked at 1e-8).
    pub fn unitary_conjugate(&self, u: &ComplexMatrix) -> Result<Self> {
        self.matrix.require_same_dim(u)?;
        u.require_unitary(1e-8)?;
        let rotated = u.matmul(&self.matrix)?.matmul_adjoint(u)?;
        DensityMatrix::trusted(rotated)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Tr(ρ²) via the O(d²) trace product. Real by construction: the stored
    /// matrix is bitwise Hermitian.
    pub fn purity(&self) -> f64 {
        purity_of(&self.matrix)
    }

    /// ⟨ψ|ρ|ψ⟩, real for Hermitian ρ.
    pub fn expectation(&self, psi: &PureState) -> Result<f64> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: psi.dim(),
            });
        }
        let d = self.dim();
        let amps = psi.amplitudes();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            let row = self.matrix.row(i);
            let mut inner = Complex64::new(0.0, 0.0);
            for (r, a) in row.iter().zip(amps.iter()) {
                inner += r * a;
            }
            acc += amps[i].conj() * inner;
        }
        Ok(acc.re)
    }
}

fn purity_of(m: &ComplexMatrix) -> f64 {
    let tp = m.trace_product(m).expect("same matrix");
    debug_assert!(tp.im.abs() <= 1e-14);
    tp.re
}

/// Normalized pure state |ψ⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates unit Euclidean norm within 1e-12.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() < MIN_STATE_DIM {
            return Err(Error::invalid(format!(
                "pure state needs at least {MIN_STATE_DIM} amplitudes"
            )));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                context: "pure-state amplitude",
            });
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized {
                norm,
                tolerance: 1e-12,
            });
        }
        Ok(PureState { amplitudes })
    }

    /// Computational basis state |index⟩.
    pub fn basis(d: usize, index: usize) -> Result<Self> {
        if index >= d {
            return Err(Error::invalid(format!(
                "basis index {index} out of range for dimension {d}"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); d];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        PureState::new(amplitudes)
    }

    /// Haar-random pure state: normalized complex Gaussian vector.
    pub fn random(d: usize, rng: &mut RandomSource) -> Result<Self> {
        let mut amplitudes: Vec<Complex64> = (0..d).map(|_| rng.complex_gaussian()).collect();
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let inv = 1.0 / norm;
        for a in amplitudes.iter_mut() {
            *a = a.scale(inv);
        }
        PureState::new(amplitudes)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// |ψ⟩⟨ψ| as a validated density matrix of purity 1.
    pub fn density(&self) -> Result<DensityMatrix> {
        let d = self.dim();
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                entries[i * d + j] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        DensityMatrix::trusted(ComplexMatrix::from_entries(d, entries)?)
    }
}

/// Validated Hermitian generator for thermal states and unitaries.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    matrix: ComplexMatrix,
}

impl Hamiltonian {
    pub fn from_matrix(m: ComplexMatrix) -> Result<Self> {
        m.require_hermitian(HERMITICITY_REL_TOL)?;
        Ok(Hamiltonian {
            matrix: m.symmetrized(),
        })
    }

    /// Symmetrized Ginibre draw: (G + G†)/2.
    pub fn random(d: usize, rng: &mut RandomSource) -> Result<Self> {
        let g = ComplexMatrix::from_fn(d, |_, _| rng.complex_gaussian())?;
        Hamiltonian::from_matrix(g.symmetrized())
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn thermal_state(&self, beta: f64) -> Result<DensityMatrix> {
        thermal_state(self, beta)
    }
}

/// Gibbs state e^{−βH}/Z. The spectrum is shifted by its minimum before
/// exponentiation; the shift cancels between numerator and partition
/// function, and keeps large β free of overflow.
pub fn thermal_state(h: &Hamiltonian, beta: f64) -> Result<DensityMatrix> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::invalid(format!(
            "inverse temperature must be finite and nonnegative, got {beta}"
        )));
    }
    let spectrum = hermitian_eig(h.matrix())?;
    let min = spectrum.min_eigenvalue();
    let z: f64 = spectrum
        .eigenvalues()
        .iter()
        .map(|&l| (-beta * (l - min)).exp())
        .sum();
    let rho = spectrum.apply(|l| (-beta * (l - min)).exp() / z)?;
    DensityMatrix::trusted(rho)
}
