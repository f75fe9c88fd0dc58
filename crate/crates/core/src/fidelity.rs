//! The fidelity measures: Uhlmann, super-fidelity, Chen's F2, the
//! normalized Hilbert-Schmidt overlap (the O(d²) fast path), operator and
//! unitary fidelity, and the thermal / real-time variants.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_apply_complex, hermitian_eig, hermitian_eigenvalues, psd_sqrt};
use crate::linalg::ComplexMatrix;
use crate::states::{DensityMatrix, Hamiltonian};

/// Unitarity gate for the unitary-fidelity inputs.
pub const UNITARITY_TOL: f64 = 1e-8;

/// Admissible imaginary residue of Tr(ρ0ρ1) for valid states.
pub const IMAG_RESIDUE_TOL: f64 = 1e-12;

/// The four state-based measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateMeasure {
    Uhlmann,
    Super,
    F2,
    Alt,
}

impl StateMeasure {
    pub const ALL: [StateMeasure; 4] = [
        StateMeasure::Uhlmann,
        StateMeasure::Super,
        StateMeasure::F2,
        StateMeasure::Alt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StateMeasure::Uhlmann => "uhlmann",
            StateMeasure::Super => "super",
            StateMeasure::F2 => "f2",
            StateMeasure::Alt => "alt",
        }
    }

    /// Evaluates this measure on a state pair (clamped scalar contract).
    pub fn compute(self, rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<f64> {
        match self {
            StateMeasure::Uhlmann => uhlmann(rho0, rho1),
            StateMeasure::Super => super_fidelity(rho0, rho1),
            StateMeasure::F2 => f2(rho0, rho1),
            StateMeasure::Alt => alt_fidelity(rho0, rho1),
        }
    }
}

impl fmt::Display for StateMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StateMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uhlmann" => Ok(StateMeasure::Uhlmann),
            "super" => Ok(StateMeasure::Super),
            "f2" => Ok(StateMeasure::F2),
            "alt" => Ok(StateMeasure::Alt),
            other => Err(Error::invalid(format!("unknown measure '{other}'"))),
        }
    }
}

/// Per-measure scalar result plus the diagnostics it was built from.
/// `value` is the raw (unclamped) number; the scalar functions clamp.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FidelityReport {
    pub measure: String,
    pub value: f64,
    #[serde(with = "complex_pair")]
    pub inner_product: Complex64,
    pub purity0: f64,
    pub purity1: f64,
    pub dim: usize,
}

/// Serializes a complex number as the `[re, im]` pair used by the file
/// format.
pub mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

fn require_equal_dims(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<()> {
    if rho0.dim() == rho1.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: rho0.dim(),
            right: rho1.dim(),
        })
    }
}

fn clamp01(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

/// Uhlmann fidelity Tr√(ρ0^{1/2} ρ1 ρ0^{1/2}), clamped into [0, 1].
///
/// The square root of S ρ1 S is never synthesized; its eigenvalues are
/// enough, with negatives from rounding clamped to zero.
pub fn uhlmann(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<f64> {
    Ok(clamp01(uhlmann_raw(rho0, rho1)?))
}

fn uhlmann_raw(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<f64> {
    require_equal_dims(rho0, rho1)?;
    let s = psd_sqrt(rho0.matrix())?;
    let m = s.matmul(rho1.matrix())?.matmul(&s)?.symmetrized();
    let eigenvalues = hermitian_eigenvalues(&m)?;
    Ok(eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).sum())
}

/// Super-fidelity Tr(ρ0ρ1) + √(1−Tr ρ0²)·√(1−Tr ρ1²).
pub fn super_fidelity(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<f64> {
    require_equal_dims(rho0, rho1)?;
    let overlap = rho0.matrix().trace_product(rho1.matrix())?.re;
    let defect0 = (1.0 - rho0.purity()).max(0.0).sqrt();
    let defect1 = (1.0 - rho1.purity()).max(0.0).sqrt();
    Ok(overlap + defect0 * defect1)
}

/// F2 = (1−r)/2 + (1+r)/2 · F1 with r = 1/(d−1). Collapses to the
/// super-fidelity at d = 2 where r = 1.
pub fn f2(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<f64> {
    require_equal_dims(rho0, rho1)?;
    let r = 1.0 / (rho0.dim() as f64 - 1.0);
    Ok((1.0 - r) / 2.0 + (1.0 + r) / 2.0 * super_fidelity(rho0, rho1)?)
}

/// The normalized Hilbert-Schmidt overlap |Tr(ρ0ρ1)| / √(Tr ρ0² · Tr ρ1²),
/// clamped into [0, 1].
///
/// All three traces go through the O(d²) trace product: no
/// eigendecomposition and no matrix product. The denominator is at least
/// 1/d for valid states, so it never vanishes.
pub fn alt_fidelity(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<f64> {
    Ok(clamp01(alt_fidelity_raw(rho0, rho1)?))
}

fn alt_fidelity_raw(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<f64> {
    require_equal_dims(rho0, rho1)?;
    let overlap = rho0.matrix().trace_product(rho1.matrix())?;
    if overlap.im.abs() > IMAG_RESIDUE_TOL {
        return Err(Error::ImaginaryResidue {
            magnitude: overlap.im.abs(),
            tolerance: IMAG_RESIDUE_TOL,
        });
    }
    Ok(overlap.re.abs() / (rho0.purity() * rho1.purity()).sqrt())
}

/// Operator fidelity |Tr(A†B)| / √(Tr(AA†)·Tr(BB†)) for arbitrary nonzero
/// operators.
pub fn operator_fidelity(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    a.require_same_dim(b)?;
    let norm_a = a.hilbert_schmidt_inner(a)?.re;
    let norm_b = b.hilbert_schmidt_inner(b)?.re;
    if norm_a <= 1e-300 || norm_b <= 1e-300 {
        return Err(Error::ZeroOperator);
    }
    Ok(a.hilbert_schmidt_inner(b)?.norm() / (norm_a * norm_b).sqrt())
}

/// (1/d)·|Tr(U0†U1)| for unitaries; equals the operator fidelity on the
/// same inputs.
pub fn unitary_fidelity(u0: &ComplexMatrix, u1: &ComplexMatrix) -> Result<f64> {
    u0.require_same_dim(u1)?;
    u0.require_unitary(UNITARITY_TOL)?;
    u1.require_unitary(UNITARITY_TOL)?;
    Ok(u0.hilbert_schmidt_inner(u1)?.norm() / u0.dim() as f64)
}

/// Fidelity of the two Gibbs states e^{−βH_k}/Z_k,
/// Tr(e^{−βH0}e^{−βH1}) / √(Tr e^{−2βH0} · Tr e^{−2βH1}).
///
/// Each spectrum is shifted by its own minimum before exponentiation; the
/// shifts cancel between numerator and denominator, so the value is exactly
/// the fidelity of the normalized thermal states.
pub fn thermal_fidelity(h0: &Hamiltonian, h1: &Hamiltonian, beta: f64) -> Result<f64> {
    if h0.dim() != h1.dim() {
        return Err(Error::DimensionMismatch {
            left: h0.dim(),
            right: h1.dim(),
        });
    }
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::invalid(format!(
            "inverse temperature must be finite and nonnegative, got {beta}"
        )));
    }
    let s0 = hermitian_eig(h0.matrix())?;
    let s1 = hermitian_eig(h1.matrix())?;
    let min0 = s0.min_eigenvalue();
    let min1 = s1.min_eigenvalue();

    let a = s0.apply(|l| (-beta * (l - min0)).exp())?;
    let b = s1.apply(|l| (-beta * (l - min1)).exp())?;
    let numerator = a.trace_product(&b)?.re;

    let z2 = |s: &crate::linalg::Spectrum, min: f64| -> f64 {
        s.eigenvalues()
            .iter()
            .map(|&l| (-2.0 * beta * (l - min)).exp())
            .sum()
    };
    let denominator = (z2(&s0, min0) * z2(&s1, min1)).sqrt();
    Ok(numerator / denominator)
}

/// Real-time counterpart of the thermal fidelity at β = it:
/// (1/d)·|Tr(e^{itH0} e^{−itH1})|, the operator fidelity of the two
/// evolution operators.
pub fn wick_unitary_fidelity(h0: &Hamiltonian, h1: &Hamiltonian, t: f64) -> Result<f64> {
    if h0.dim() != h1.dim() {
        return Err(Error::DimensionMismatch {
            left: h0.dim(),
            right: h1.dim(),
        });
    }
    if !t.is_finite() {
        return Err(Error::invalid("time parameter must be finite"));
    }
    let forward = hermitian_apply_complex(h0.matrix(), |l| Complex64::from_polar(1.0, t * l))?;
    let backward = hermitian_apply_complex(h1.matrix(), |l| Complex64::from_polar(1.0, -t * l))?;
    Ok(forward.trace_product(&backward)?.norm() / h0.dim() as f64)
}

/// Report for a state-measure evaluation; `value` is raw (unclamped).
pub fn state_report(
    measure: StateMeasure,
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
) -> Result<FidelityReport> {
    require_equal_dims(rho0, rho1)?;
    let value = match measure {
        StateMeasure::Uhlmann => uhlmann_raw(rho0, rho1)?,
        StateMeasure::Alt => alt_fidelity_raw(rho0, rho1)?,
        StateMeasure::Super => super_fidelity(rho0, rho1)?,
        StateMeasure::F2 => f2(rho0, rho1)?,
    };
    Ok(FidelityReport {
        measure: measure.name().to_string(),
        value,
        inner_product: rho0.matrix().trace_product(rho1.matrix())?,
        purity0: rho0.purity(),
        purity1: rho1.purity(),
        dim: rho0.dim(),
    })
}

/// Report for the operator fidelity; the purity slots carry the squared
/// Hilbert-Schmidt norms Tr(AA†), Tr(BB†).
pub fn operator_report(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<FidelityReport> {
    let value = operator_fidelity(a, b)?;
    Ok(FidelityReport {
        measure: "operator".to_string(),
        value,
        inner_product: a.hilbert_schmidt_inner(b)?,
        purity0: a.hilbert_schmidt_inner(a)?.re,
        purity1: b.hilbert_schmidt_inner(b)?.re,
        dim: a.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{random_density, PureState, RandomSource};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn orthogonal_pair() -> (DensityMatrix, DensityMatrix) {
        let rho0 =
            DensityMatrix::from_matrix(ComplexMatrix::diagonal_real(&[0.5, 0.5, 0.0, 0.0]))
                .unwrap();
        let rho1 =
            DensityMatrix::from_matrix(ComplexMatrix::diagonal_real(&[0.0, 0.0, 0.5, 0.5]))
                .unwrap();
        (rho0, rho1)
    }

    #[test]
    fn uhlmann_of_identical_states_is_one() {
        let mut rng = RandomSource::new(61);
        let rho = random_density(4, 4, &mut rng).unwrap();
        assert!((uhlmann(&rho, &rho).unwrap() - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn uhlmann_of_pure_states_is_overlap() {
        let zero = PureState::basis(2, 0).unwrap().density().unwrap();
        let plus = PureState::new(vec![
            c(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            c(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ])
        .unwrap()
        .density()
        .unwrap();
        let f = uhlmann(&zero, &plus).unwrap();
        assert!((f - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-8);
    }

    #[test]
    fn uhlmann_of_orthogonal_states_is_zero() {
        let (rho0, rho1) = orthogonal_pair();
        assert!(uhlmann(&rho0, &rho1).unwrap() <= 1e-7);
    }

    #[test]
    fn super_fidelity_on_orthogonal_pair_is_half() {
        let (rho0, rho1) = orthogonal_pair();
        assert!((super_fidelity(&rho0, &rho1).unwrap() - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn super_fidelity_of_identical_pure_state_is_one() {
        let mut rng = RandomSource::new(62);
        let psi = PureState::random(3, &mut rng).unwrap().density().unwrap();
        assert!((super_fidelity(&psi, &psi).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn super_fidelity_pure_branch_drops_second_term() {
        let zero = PureState::basis(2, 0).unwrap().density().unwrap();
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!((super_fidelity(&zero, &mixed).unwrap() - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn f2_on_orthogonal_pair_is_two_thirds() {
        let (rho0, rho1) = orthogonal_pair();
        assert!((f2(&rho0, &rho1).unwrap() - 2.0 / 3.0).abs() <= 1e-12);
    }

    #[test]
    fn f2_of_identical_states_is_one() {
        let mut rng = RandomSource::new(63);
        let rho = random_density(5, 5, &mut rng).unwrap();
        assert!((f2(&rho, &rho).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn f2_collapses_to_super_fidelity_for_qubits() {
        let mut rng = RandomSource::new(64);
        for _ in 0..50 {
            let a = random_density(2, 2, &mut rng).unwrap();
            let b = random_density(2, 2, &mut rng).unwrap();
            let lhs = f2(&a, &b).unwrap();
            let rhs = super_fidelity(&a, &b).unwrap();
            assert!((lhs - rhs).abs() <= 1e-14);
        }
    }

    #[test]
    fn operator_fidelity_of_equal_operators_is_one() {
        let mut rng = RandomSource::new(65);
        let a = ComplexMatrix::from_fn(3, |_, _| rng.complex_gaussian()).unwrap();
        assert!((operator_fidelity(&a, &a).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn operator_fidelity_of_orthogonal_paulis_is_zero() {
        let x = ComplexMatrix::from_entries(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
            .unwrap();
        let y = ComplexMatrix::from_entries(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
            .unwrap();
        assert!(operator_fidelity(&x, &y).unwrap() <= 1e-15);
    }

    #[test]
    fn operator_fidelity_direct_small_case() {
        let id = ComplexMatrix::identity(2);
        let b = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0)]);
        let f = operator_fidelity(&id, &b).unwrap();
        assert!((f - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-12);
    }

    #[test]
    fn operator_fidelity_rejects_zero_operator() {
        let z = ComplexMatrix::zeros(2);
        let id = ComplexMatrix::identity(2);
        assert!(matches!(
            operator_fidelity(&z, &id),
            Err(Error::ZeroOperator)
        ));
    }

    #[test]
    fn unitary_fidelity_cases() {
        let mut rng = RandomSource::new(66);
        let u = crate::states::random_unitary(3, &mut rng).unwrap();
        assert!((unitary_fidelity(&u, &u).unwrap() - 1.0).abs() <= 1e-12);

        let id = ComplexMatrix::identity(2);
        let z = ComplexMatrix::diagonal_real(&[1.0, -1.0]);
        assert!(unitary_fidelity(&id, &z).unwrap() <= 1e-15);

        let theta = std::f64::consts::FRAC_PI_2;
        let phase = ComplexMatrix::diagonal(&[c(1.0, 0.0), Complex64::from_polar(1.0, theta)]);
        let f = unitary_fidelity(&id, &phase).unwrap();
        assert!((f - (theta / 2.0).cos().abs()).abs() <= 1e-12);
        assert!((f - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-12);
    }

    #[test]
    fn unitary_fidelity_rejects_non_unitary() {
        let m = ComplexMatrix::diagonal_real(&[1.0, 2.0]);
        let id = ComplexMatrix::identity(2);
        assert!(matches!(
            unitary_fidelity(&m, &id),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn unitary_fidelity_matches_operator_fidelity() {
        let mut rng = RandomSource::new(67);
        let u0 = crate::states::random_unitary(4, &mut rng).unwrap();
        let u1 = crate::states::random_unitary(4, &mut rng).unwrap();
        let a = unitary_fidelity(&u0, &u1).unwrap();
        let b = operator_fidelity(&u0, &u1).unwrap();
        assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn alt_fidelity_on_orthogonal_pair_is_zero() {
        let (rho0, rho1) = orthogonal_pair();
        assert!(alt_fidelity(&rho0, &rho1).unwrap() <= 1e-12);
    }

    #[test]
    fn alt_fidelity_of_identical_states_is_one() {
        let mut rng = RandomSource::new(68);
        let rho = random_density(4, 4, &mut rng).unwrap();
        assert!((alt_fidelity(&rho, &rho).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn alt_fidelity_mixed_vs_pure_closed_form() {
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        let zero = PureState::basis(2, 0).unwrap().density().unwrap();
        let f = alt_fidelity(&mixed, &zero).unwrap();
        assert!((f - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-12);
    }

    #[test]
    fn thermal_fidelity_trivial_cases() {
        let mut rng = RandomSource::new(69);
        let h = Hamiltonian::random(4, &mut rng).unwrap();
        assert!((thermal_fidelity(&h, &h, 1.3).unwrap() - 1.0).abs() <= 1e-12);

        let g = Hamiltonian::random(4, &mut rng).unwrap();
        assert!((thermal_fidelity(&h, &g, 0.0).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn thermal_fidelity_matches_diagonal_closed_form() {
        let h0 = Hamiltonian::from_matrix(ComplexMatrix::diagonal_real(&[0.0, 1.0])).unwrap();
        let h1 = Hamiltonian::from_matrix(ComplexMatrix::diagonal_real(&[0.0, 2.0])).unwrap();
        let f = thermal_fidelity(&h0, &h1, 1.0).unwrap();
        let closed = (1.0 + (-3.0f64).exp())
            / ((1.0 + (-2.0f64).exp()) * (1.0 + (-4.0f64).exp())).sqrt();
        assert!((f - closed).abs() <= 1e-12);
        assert!((f - 0.976_332_945_646_932_2).abs() <= 1e-10);
    }

    #[test]
    fn thermal_fidelity_equals_alt_of_thermal_states() {
        let mut rng = RandomSource::new(70);
        for beta in [0.0, 0.5, 1.0, 10.0] {
            let h0 = Hamiltonian::random(3, &mut rng).unwrap();
            let h1 = Hamiltonian::random(3, &mut rng).unwrap();
            let direct = thermal_fidelity(&h0, &h1, beta).unwrap();
            let via_states = alt_fidelity(
                &h0.thermal_state(beta).unwrap(),
                &h1.thermal_state(beta).unwrap(),
            )
            .unwrap();
            assert!(
                (direct - via_states).abs() <= 1e-10,
                "beta {beta}: {direct} vs {via_states}"
            );
        }
    }

    #[test]
    fn wick_fidelity_trivial_cases() {
        let mut rng = RandomSource::new(71);
        let h0 = Hamiltonian::random(3, &mut rng).unwrap();
        let h1 = Hamiltonian::random(3, &mut rng).unwrap();
        assert!((wick_unitary_fidelity(&h0, &h1, 0.0).unwrap() - 1.0).abs() <= 1e-12);
        assert!((wick_unitary_fidelity(&h0, &h0, 1.7).unwrap() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn wick_fidelity_half_period_closed_form() {
        let h0 = Hamiltonian::from_matrix(ComplexMatrix::zeros(2)).unwrap();
        let h1 =
            Hamiltonian::from_matrix(ComplexMatrix::diagonal_real(&[0.0, std::f64::consts::PI]))
                .unwrap();
        assert!(wick_unitary_fidelity(&h0, &h1, 1.0).unwrap() <= 1e-12);
    }

    #[test]
    fn wick_matches_unitary_fidelity_of_exponentials() {
        let mut rng = RandomSource::new(72);
        let h0 = Hamiltonian::random(4, &mut rng).unwrap();
        let h1 = Hamiltonian::random(4, &mut rng).unwrap();
        for t in [0.1, 0.5, 1.0, 2.0] {
            let direct = wick_unitary_fidelity(&h0, &h1, t).unwrap();
            let u0 =
                hermitian_apply_complex(h0.matrix(), |l| Complex64::from_polar(1.0, -t * l))
                    .unwrap();
            let u1 =
                hermitian_apply_complex(h1.matrix(), |l| Complex64::from_polar(1.0, -t * l))
                    .unwrap();
            let via_unitaries = unitary_fidelity(&u0, &u1).unwrap();
            assert!((direct - via_unitaries).abs() <= 1e-10);
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected_everywhere() {
        let a = DensityMatrix::maximally_mixed(2).unwrap();
        let b = DensityMatrix::maximally_mixed(3).unwrap();
        for measure in StateMeasure::ALL {
            assert!(matches!(
                measure.compute(&a, &b),
                Err(Error::DimensionMismatch { .. })
            ));
        }
    }

    #[test]
    fn report_carries_raw_value_and_diagnostics() {
        let mut rng = RandomSource::new(73);
        let rho = random_density(4, 4, &mut rng).unwrap();
        let report = state_report(StateMeasure::Alt, &rho, &rho).unwrap();
        assert_eq!(report.measure, "alt");
        assert_eq!(report.dim, 4);
        assert!((report.value - 1.0).abs() <= 1e-12);
        assert!((report.purity0 - rho.purity()).abs() <= 1e-15);
        assert!((report.inner_product.re - rho.purity()).abs() <= 1e-15);
    }

    #[test]
    fn measure_values_stay_in_range() {
        let mut rng = RandomSource::new(74);
        for _ in 0..100 {
            let a = random_density(3, 3, &mut rng).unwrap();
            let b = random_density(3, 3, &mut rng).unwrap();
            for measure in StateMeasure::ALL {
                let v = measure.compute(&a, &b).unwrap();
                assert!(v >= -1e-12 && v <= 1.0 + 1e-12, "{measure}: {v}");
            }
        }
    }
}
