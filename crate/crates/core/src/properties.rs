//! Executable property suite: axiom checks, the orthogonal-pair table, the
//! concavity counterexample and its random sweeps, the qubit reduction, the
//! super-fidelity bound, and the thermal/real-time identity.
//!
//! Sweeps derive one child random stream per sample index and reduce with
//! order-independent max/min/count operations, so a report is a pure
//! function of (measure, d, samples, seed, tolerance) no matter how many
//! threads run it.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exec::try_map_reduce;
use crate::fidelity::{
    f2, state_report, super_fidelity, uhlmann, unitary_fidelity, wick_unitary_fidelity,
    FidelityReport, StateMeasure,
};
use crate::linalg::{hermitian_apply_complex, ComplexMatrix};
use crate::states::{
    random_density, random_unitary, DensityMatrix, Hamiltonian, PureState, RandomSource,
};

/// Gaps above −CONCAVITY_SLACK count as satisfying the concavity
/// inequality; the slack absorbs floating-point residue at the boundary.
pub const CONCAVITY_SLACK: f64 = 1e-12;

/// A measure flagged `expect_violation` must violate its tolerance by at
/// least this much for the inverted (informational) check to pass.
pub const INFORMATIONAL_VIOLATION_FLOOR: f64 = 1e-3;

/// Pass/fail ledger for one property over a sample sweep.
///
/// `max_violation` is the worst deviation mapped to ≥ 0 and `passed` is
/// exactly `max_violation <= tolerance`. Informational entries (known
/// violations, e.g. super-fidelity multiplicativity) keep that invariant
/// and set `expect_violation`; [`PropertyReport::effective_pass`] applies
/// the inversion.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub property_name: String,
    pub measure: String,
    pub samples: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub max_violation: f64,
    pub passed: bool,
    pub expect_violation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub satisfied_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl PropertyReport {
    fn new(
        property_name: impl Into<String>,
        measure: impl Into<String>,
        samples: u64,
        seed: u64,
        tolerance: f64,
        max_violation: f64,
        witness: Option<String>,
    ) -> Self {
        let passed = max_violation <= tolerance;
        debug_assert!(passed || witness.is_some(), "failing report needs witness");
        PropertyReport {
            property_name: property_name.into(),
            measure: measure.into(),
            samples,
            seed,
            tolerance,
            max_violation,
            passed,
            expect_violation: false,
            satisfied_fraction: None,
            min_gap: None,
            witness,
        }
    }

    /// Suite-level verdict with the informational inversion applied: an
    /// expected violation passes only by violating decisively.
    pub fn effective_pass(&self) -> bool {
        if self.expect_violation {
            !self.passed && self.max_violation > INFORMATIONAL_VIOLATION_FLOOR
        } else {
            self.passed
        }
    }
}

/// One point of a concavity comparison: lhs = F(pρ1+(1−p)ρ2, σ),
/// rhs = pF(ρ1,σ) + (1−p)F(ρ2,σ), gap = lhs − rhs as computed.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConcavityRecord {
    pub p: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

/// Per-axiom tolerances for [`check_jozsa_axioms`].
#[derive(Debug, Clone, Copy)]
pub struct JozsaTolerances {
    pub normalization: f64,
    pub symmetry: f64,
    pub unitary_invariance: f64,
    pub pure_reduction: f64,
}

impl JozsaTolerances {
    /// Defaults per measure. The Uhlmann entries are looser: its value goes
    /// through square roots of computed eigenvalues, which amplifies
    /// eigensolver residue near zero (√ε ≫ ε for rank-deficient products).
    pub fn default_for(measure: StateMeasure) -> Self {
        match measure {
            StateMeasure::Alt => JozsaTolerances {
                normalization: 1e-12,
                symmetry: 1e-12,
                unitary_invariance: 1e-9,
                pure_reduction: 1e-10,
            },
            StateMeasure::Super | StateMeasure::F2 => JozsaTolerances {
                normalization: 1e-12,
                symmetry: 1e-12,
                unitary_invariance: 1e-9,
                // √(1−purity) of a numerically pure state contributes √ε.
                pure_reduction: 1e-7,
            },
            StateMeasure::Uhlmann => JozsaTolerances {
                normalization: 1e-8,
                symmetry: 1e-8,
                unitary_invariance: 1e-8,
                pure_reduction: 1e-6,
            },
        }
    }

    /// One tolerance for all four axioms (CLI override).
    pub fn uniform(tol: f64) -> Self {
        JozsaTolerances {
            normalization: tol,
            symmetry: tol,
            unitary_invariance: tol,
            pure_reduction: tol,
        }
    }
}

fn require_samples(samples: u64) -> Result<()> {
    if samples >= 1 {
        Ok(())
    } else {
        Err(Error::invalid("sample count must be at least 1"))
    }
}

/// Worst deviation plus the index that produced it; combines by keeping the
/// larger deviation, breaking ties toward the smaller index so parallel and
/// sequential runs agree.
#[derive(Debug, Clone, Copy)]
struct Worst {
    deviation: f64,
    index: u64,
}

impl Worst {
    fn combine(self, other: Worst) -> Worst {
        match self.deviation.total_cmp(&other.deviation) {
            std::cmp::Ordering::Less => other,
            std::cmp::Ordering::Greater => self,
            std::cmp::Ordering::Equal => {
                if other.index < self.index {
                    other
                } else {
                    self
                }
            }
        }
    }
}

fn matrix_rows(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.dim())
        .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn amplitude_pairs(amps: &[Complex64]) -> Vec<[f64; 2]> {
    amps.iter().map(|z| [z.re, z.im]).collect()
}

/// The orthogonal rank-2 pair on d = 4:
/// ρ0 = (|0⟩⟨0|+|1⟩⟨1|)/2, ρ1 = (|2⟩⟨2|+|3⟩⟨3|)/2.
pub fn orthogonal_example_states() -> (DensityMatrix, DensityMatrix) {
    let rho0 = DensityMatrix::from_matrix(ComplexMatrix::diagonal_real(&[0.5, 0.5, 0.0, 0.0]))
        .expect("fixed valid state");
    let rho1 = DensityMatrix::from_matrix(ComplexMatrix::diagonal_real(&[0.0, 0.0, 0.5, 0.5]))
        .expect("fixed valid state");
    (rho0, rho1)
}

/// All four state measures on the orthogonal pair. Expected values:
/// uhlmann 0, super 1/2, f2 2/3, alt 0.
pub fn paper_orthogonal_example() -> Result<Vec<FidelityReport>> {
    let (rho0, rho1) = orthogonal_example_states();
    StateMeasure::ALL
        .iter()
        .map(|&m| state_report(m, &rho0, &rho1))
        .collect()
}

/// The concavity-violation triple: ρ1 = I/2, ρ2 = |0⟩⟨0|, σ = |1⟩⟨1|.
pub fn counterexample_states() -> (DensityMatrix, DensityMatrix, DensityMatrix) {
    let rho1 = DensityMatrix::maximally_mixed(2).expect("fixed valid state");
    let rho2 = PureState::basis(2, 0)
        .and_then(|s| s.density())
        .expect("fixed valid state");
    let sigma = PureState::basis(2, 1)
        .and_then(|s| s.density())
        .expect("fixed valid state");
    (rho1, rho2, sigma)
}

/// Closed form for F(pρ1+(1−p)ρ2, σ) on the counterexample triple:
/// p / (√2·√(1+(1−p)²)).
pub fn counterexample_closed_form_lhs(p: f64) -> f64 {
    p / (std::f64::consts::SQRT_2 * (1.0 + (1.0 - p) * (1.0 - p)).sqrt())
}

/// Closed form for pF(ρ1,σ) + (1−p)F(ρ2,σ) on the triple: p/√2.
pub fn counterexample_closed_form_rhs(p: f64) -> f64 {
    p / std::f64::consts::SQRT_2
}

/// Evaluates the counterexample at mixing weight `p` and cross-checks both
/// sides against their closed forms at 1e-12.
pub fn paper_counterexample(p: f64) -> Result<ConcavityRecord> {
    let (rho1, rho2, sigma) = counterexample_states();
    let record = concavity_gap(StateMeasure::Alt, &rho1, &rho2, &sigma, p)?;
    let lhs_residual = (record.lhs - counterexample_closed_form_lhs(p)).abs();
    let rhs_residual = (record.rhs - counterexample_closed_form_rhs(p)).abs();
    if lhs_residual > 1e-12 || rhs_residual > 1e-12 {
        return Err(Error::invalid(format!(
            "closed-form mismatch at p = {p}: lhs residual {lhs_residual:.3e}, rhs residual {rhs_residual:.3e}"
        )));
    }
    Ok(record)
}

/// General concavity comparison for any measure and triple.
pub fn concavity_gap(
    measure: StateMeasure,
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    sigma: &DensityMatrix,
    p: f64,
) -> Result<ConcavityRecord> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "mixing weight must lie in [0, 1], got {p}"
        )));
    }
    let mixed = DensityMatrix::mix(&[p, 1.0 - p], &[rho1.clone(), rho2.clone()])?;
    let lhs = measure.compute(&mixed, sigma)?;
    let rhs = p * measure.compute(rho1, sigma)? + (1.0 - p) * measure.compute(rho2, sigma)?;
    Ok(ConcavityRecord {
        p,
        lhs,
        rhs,
        gap: lhs - rhs,
    })
}

/// Input family for [`concavity_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepFamily {
    /// Hilbert-Schmidt random full-rank triples, p uniform on [0, 1].
    Random,
    /// The fixed counterexample triple, p uniform on (0.01, 0.99).
    Counterexample,
}

/// Randomized concavity experiment. Report-only: the returned report's
/// `passed` reflects whether any sampled gap violated the slack, and the
/// satisfied fraction / minimum gap / witness carry the actual findings.
pub fn concavity_sweep(
    measure: StateMeasure,
    d: usize,
    samples: u64,
    rng: &RandomSource,
    family: SweepFamily,
) -> Result<PropertyReport> {
    require_samples(samples)?;

    let draw = |index: u64| -> Result<(DensityMatrix, DensityMatrix, DensityMatrix, f64)> {
        let mut child = rng.derive(index);
        match family {
            SweepFamily::Random => {
                let rho1 = random_density(d, d, &mut child)?;
                let rho2 = random_density(d, d, &mut child)?;
                let sigma = random_density(d, d, &mut child)?;
                let p = child.uniform();
                Ok((rho1, rho2, sigma, p))
            }
            SweepFamily::Counterexample => {
                let (rho1, rho2, sigma) = counterexample_states();
                let p = 0.01 + 0.98 * child.uniform();
                Ok((rho1, rho2, sigma, p))
            }
        }
    };

    struct Acc {
        satisfied: u64,
        min_gap: f64,
        min_index: u64,
    }

    let outcome = try_map_reduce(
        samples,
        |i| {
            let (rho1, rho2, sigma, p) = draw(i)?;
            let record = concavity_gap(measure, &rho1, &rho2, &sigma, p)?;
            Ok(Acc {
                satisfied: (record.gap >= -CONCAVITY_SLACK) as u64,
                min_gap: record.gap,
                min_index: i,
            })
        },
        |a, b| {
            let (min_gap, min_index) = match a.min_gap.total_cmp(&b.min_gap) {
                std::cmp::Ordering::Less => (a.min_gap, a.min_index),
                std::cmp::Ordering::Greater => (b.min_gap, b.min_index),
                std::cmp::Ordering::Equal => (a.min_gap, a.min_index.min(b.min_index)),
            };
            Acc {
                satisfied: a.satisfied + b.satisfied,
                min_gap,
                min_index,
            }
        },
    )?
    .expect("samples >= 1");

    let (rho1, rho2, sigma, p) = draw(outcome.min_index)?;
    let witness = json!({
        "sample_index": outcome.min_index,
        "child_seed": rng.derive(outcome.min_index).seed(),
        "p": p,
        "gap": outcome.min_gap,
        "rho1": matrix_rows(rho1.matrix()),
        "rho2": matrix_rows(rho2.matrix()),
        "sigma": matrix_rows(sigma.matrix()),
    })
    .to_string();

    let mut report = PropertyReport::new(
        "concavity_sweep",
        measure.name(),
        samples,
        rng.seed(),
        0.0,
        (-outcome.min_gap - CONCAVITY_SLACK).max(0.0),
        Some(witness),
    );
    report.satisfied_fraction = Some(outcome.satisfied as f64 / samples as f64);
    report.min_gap = Some(outcome.min_gap);
    Ok(report)
}

/// The four axiom checks (normalization, symmetry, unitary invariance,
/// pure-state reduction) over seeded random states. The pure-state target
/// is measure-specific: ⟨ψ|ρ|ψ⟩/√(Tr ρ²) for the overlap measure,
/// √⟨ψ|ρ|ψ⟩ for Uhlmann, and the affine images for super/F2.
pub fn check_jozsa_axioms(
    measure: StateMeasure,
    d: usize,
    samples: u64,
    rng: &RandomSource,
    tolerances: JozsaTolerances,
) -> Result<Vec<PropertyReport>> {
    require_samples(samples)?;

    let draw = |index: u64| -> Result<(DensityMatrix, DensityMatrix, ComplexMatrix, PureState)> {
        let mut child = rng.derive(index);
        let rho = random_density(d, d, &mut child)?;
        let sigma = random_density(d, d, &mut child)?;
        let u = random_unitary(d, &mut child)?;
        let psi = PureState::random(d, &mut child)?;
        Ok((rho, sigma, u, psi))
    };

    let pure_target = |rho: &DensityMatrix, psi: &PureState| -> Result<f64> {
        let expectation = rho.expectation(psi)?;
        Ok(match measure {
            StateMeasure::Alt => expectation / rho.purity().sqrt(),
            StateMeasure::Uhlmann => expectation.max(0.0).sqrt(),
            StateMeasure::Super => expectation,
            StateMeasure::F2 => {
                let r = 1.0 / (d as f64 - 1.0);
                (1.0 - r) / 2.0 + (1.0 + r) / 2.0 * expectation
            }
        })
    };

    let deviations = |index: u64| -> Result<[f64; 4]> {
        let (rho, sigma, u, psi) = draw(index)?;
        let forward = measure.compute(&rho, &sigma)?;
        let normalization = (measure.compute(&rho, &rho)? - 1.0).abs();
        let symmetry = (forward - measure.compute(&sigma, &rho)?).abs();
        let rotated = (measure.compute(
            &rho.unitary_conjugate(&u)?,
            &sigma.unitary_conjugate(&u)?,
        )? - forward)
            .abs();
        let pure = (measure.compute(&rho, &psi.density()?)? - pure_target(&rho, &psi)?).abs();
        Ok([normalization, symmetry, rotated, pure])
    };

    let worst = try_map_reduce(
        samples,
        |i| {
            let devs = deviations(i)?;
            Ok(devs.map(|deviation| Worst { deviation, index: i }))
        },
        |a, b| [0, 1, 2, 3].map(|k| a[k].combine(b[k])),
    )?
    .expect("samples >= 1");

    let names = [
        "normalization",
        "symmetry",
        "unitary_invariance",
        "pure_state_reduction",
    ];
    let tols = [
        tolerances.normalization,
        tolerances.symmetry,
        tolerances.unitary_invariance,
        tolerances.pure_reduction,
    ];

    let mut reports = Vec::with_capacity(4);
    for k in 0..4 {
        let witness = if worst[k].deviation > tols[k] {
            let (rho, sigma, u, psi) = draw(worst[k].index)?;
            Some(
                json!({
                    "sample_index": worst[k].index,
                    "child_seed": rng.derive(worst[k].index).seed(),
                    "rho": matrix_rows(rho.matrix()),
                    "sigma": matrix_rows(sigma.matrix()),
                    "unitary": matrix_rows(&u),
                    "psi": amplitude_pairs(psi.amplitudes()),
                })
                .to_string(),
            )
        } else {
            None
        };
        reports.push(PropertyReport::new(
            names[k],
            measure.name(),
            samples,
            rng.seed(),
            tols[k],
            worst[k].deviation,
            witness,
        ));
    }
    Ok(reports)
}

/// Multiplicativity under tensor products:
/// max |F(a⊗b, c⊗e) − F(a,c)·F(b,e)| over random quadruples. Super and F2
/// are not multiplicative; their reports are informational with
/// `expect_violation` set.
pub fn check_multiplicativity(
    measure: StateMeasure,
    d1: usize,
    d2: usize,
    samples: u64,
    rng: &RandomSource,
) -> Result<PropertyReport> {
    require_samples(samples)?;
    if d1 * d2 > 64 {
        return Err(Error::invalid(format!(
            "tensor dimension {d1}x{d2} exceeds the supported 64"
        )));
    }

    let draw = |index: u64| -> Result<[DensityMatrix; 4]> {
        let mut child = rng.derive(index);
        let a = random_density(d1, d1, &mut child)?;
        let c = random_density(d1, d1, &mut child)?;
        let b = random_density(d2, d2, &mut child)?;
        let e = random_density(d2, d2, &mut child)?;
        Ok([a, c, b, e])
    };

    let worst = try_map_reduce(
        samples,
        |i| {
            let [a, c, b, e] = draw(i)?;
            let joint = measure.compute(&DensityMatrix::tensor(&a, &b)?, &DensityMatrix::tensor(&c, &e)?)?;
            let split = measure.compute(&a, &c)? * measure.compute(&b, &e)?;
            Ok(Worst {
                deviation: (joint - split).abs(),
                index: i,
            })
        },
        Worst::combine,
    )?
    .expect("samples >= 1");

    let tolerance = match measure {
        StateMeasure::Alt => 1e-9,
        StateMeasure::Uhlmann => 1e-7,
        StateMeasure::Super | StateMeasure::F2 => 1e-9,
    };

    let witness = if worst.deviation > tolerance {
        let [a, c, b, e] = draw(worst.index)?;
        Some(
            json!({
                "sample_index": worst.index,
                "child_seed": rng.derive(worst.index).seed(),
                "a": matrix_rows(a.matrix()),
                "c": matrix_rows(c.matrix()),
                "b": matrix_rows(b.matrix()),
                "e": matrix_rows(e.matrix()),
            })
            .to_string(),
        )
    } else {
        None
    };

    let mut report = PropertyReport::new(
        "multiplicativity",
        measure.name(),
        samples,
        rng.seed(),
        tolerance,
        worst.deviation,
        witness,
    );
    report.expect_violation = matches!(measure, StateMeasure::Super | StateMeasure::F2);
    Ok(report)
}

fn det2(m: &ComplexMatrix) -> f64 {
    debug_assert_eq!(m.dim(), 2);
    (m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)).re
}

/// Qubit reduction checks over random pairs:
/// super = uhlmann², f2 = super, and the closed form
/// uhlmann² = Tr(ρσ) + 2√(det ρ · det σ).
pub fn check_qubit_reduction(samples: u64, rng: &RandomSource) -> Result<Vec<PropertyReport>> {
    require_samples(samples)?;

    let draw = |index: u64| -> Result<(DensityMatrix, DensityMatrix)> {
        let mut child = rng.derive(index);
        Ok((
            random_density(2, 2, &mut child)?,
            random_density(2, 2, &mut child)?,
        ))
    };

    let worst = try_map_reduce(
        samples,
        |i| {
            let (rho, sigma) = draw(i)?;
            let u = uhlmann(&rho, &sigma)?;
            let u_sq = u * u;
            let sup = super_fidelity(&rho, &sigma)?;
            let f2_value = f2(&rho, &sigma)?;
            let overlap = rho.matrix().trace_product(sigma.matrix())?.re;
            let closed_sq = overlap + 2.0 * (det2(rho.matrix()) * det2(sigma.matrix())).max(0.0).sqrt();
            Ok([
                Worst { deviation: (sup - u_sq).abs(), index: i },
                Worst { deviation: (f2_value - sup).abs(), index: i },
                Worst { deviation: (u_sq - closed_sq).abs(), index: i },
            ])
        },
        |a, b| [0, 1, 2].map(|k| a[k].combine(b[k])),
    )?
    .expect("samples >= 1");

    let names = [
        "qubit_super_equals_uhlmann_squared",
        "qubit_f2_equals_super",
        "qubit_uhlmann_closed_form",
    ];
    let tols = [1e-8, 1e-14, 1e-8];

    let mut reports = Vec::with_capacity(3);
    for k in 0..3 {
        let witness = if worst[k].deviation > tols[k] {
            let (rho, sigma) = draw(worst[k].index)?;
            Some(
                json!({
                    "sample_index": worst[k].index,
                    "child_seed": rng.derive(worst[k].index).seed(),
                    "rho": matrix_rows(rho.matrix()),
                    "sigma": matrix_rows(sigma.matrix()),
                })
                .to_string(),
            )
        } else {
            None
        };
        reports.push(PropertyReport::new(
            names[k],
            "uhlmann",
            samples,
            rng.seed(),
            tols[k],
            worst[k].deviation,
            witness,
        ));
    }
    Ok(reports)
}

/// Super-fidelity as an upper bound in the squared convention:
/// super ≥ uhlmann² − 1e-8 over random pairs. (The unsquared reading fails;
/// see the ρ = |0⟩⟨0|, σ = I/2 witness exercised in the tests.)
pub fn check_superfidelity_bound(
    d: usize,
    samples: u64,
    rng: &RandomSource,
) -> Result<PropertyReport> {
    require_samples(samples)?;

    let draw = |index: u64| -> Result<(DensityMatrix, DensityMatrix)> {
        let mut child = rng.derive(index);
        Ok((
            random_density(d, d, &mut child)?,
            random_density(d, d, &mut child)?,
        ))
    };

    let worst = try_map_reduce(
        samples,
        |i| {
            let (rho, sigma) = draw(i)?;
            let u = uhlmann(&rho, &sigma)?;
            let sup = super_fidelity(&rho, &sigma)?;
            Ok(Worst {
                deviation: (u * u - sup).max(0.0),
                index: i,
            })
        },
        Worst::combine,
    )?
    .expect("samples >= 1");

    let tolerance = 1e-8;
    let witness = if worst.deviation > tolerance {
        let (rho, sigma) = draw(worst.index)?;
        Some(
            json!({
                "sample_index": worst.index,
                "child_seed": rng.derive(worst.index).seed(),
                "rho": matrix_rows(rho.matrix()),
                "sigma": matrix_rows(sigma.matrix()),
            })
            .to_string(),
        )
    } else {
        None
    };

    Ok(PropertyReport::new(
        "superfidelity_bound",
        "super",
        samples,
        rng.seed(),
        tolerance,
        worst.deviation,
        witness,
    ))
}

/// Dual-path check of the β = it continuation: the direct real-time value
/// against the unitary fidelity of the synthesized exponentials, over
/// random Hermitian pairs and a time grid.
pub fn check_wick(
    d: usize,
    samples: u64,
    t_grid: &[f64],
    rng: &RandomSource,
) -> Result<PropertyReport> {
    require_samples(samples)?;
    if d > 8 {
        return Err(Error::invalid(format!(
            "wick check supports d <= 8, got {d}"
        )));
    }
    if t_grid.is_empty() || t_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::invalid("time grid must be non-empty and finite"));
    }

    let draw = |index: u64| -> Result<(Hamiltonian, Hamiltonian)> {
        let mut child = rng.derive(index);
        Ok((
            Hamiltonian::random(d, &mut child)?,
            Hamiltonian::random(d, &mut child)?,
        ))
    };

    let worst = try_map_reduce(
        samples,
        |i| {
            let (h0, h1) = draw(i)?;
            let mut deviation = 0.0f64;
            for &t in t_grid {
                let direct = wick_unitary_fidelity(&h0, &h1, t)?;
                let u0 = hermitian_apply_complex(h0.matrix(), |l| {
                    Complex64::from_polar(1.0, -t * l)
                })?;
                let u1 = hermitian_apply_complex(h1.matrix(), |l| {
                    Complex64::from_polar(1.0, -t * l)
                })?;
                deviation = deviation.max((direct - unitary_fidelity(&u0, &u1)?).abs());
            }
            Ok(Worst {
                deviation,
                index: i,
            })
        },
        Worst::combine,
    )?
    .expect("samples >= 1");

    let tolerance = 1e-10;
    let witness = if worst.deviation > tolerance {
        let (h0, h1) = draw(worst.index)?;
        Some(
            json!({
                "sample_index": worst.index,
                "child_seed": rng.derive(worst.index).seed(),
                "h0": matrix_rows(h0.matrix()),
                "h1": matrix_rows(h1.matrix()),
                "t_grid": t_grid,
            })
            .to_string(),
        )
    } else {
        None
    };

    Ok(PropertyReport::new(
        "wick_identity",
        "wick",
        samples,
        rng.seed(),
        tolerance,
        worst.deviation,
        witness,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fidelity::alt_fidelity;

    #[test]
    fn orthogonal_example_matches_reference_values() {
        let reports = paper_orthogonal_example().unwrap();
        let by_name = |name: &str| reports.iter().find(|r| r.measure == name).unwrap();
        assert!(by_name("uhlmann").value.abs() <= 1e-7);
        assert!((by_name("super").value - 0.5).abs() <= 1e-12);
        assert!((by_name("f2").value - 2.0 / 3.0).abs() <= 1e-12);
        assert!(by_name("alt").value.abs() <= 1e-12);
        for r in &reports {
            assert!((r.purity0 - 0.5).abs() <= 1e-14);
            assert!((r.purity1 - 0.5).abs() <= 1e-14);
        }
    }

    #[test]
    fn counterexample_midpoint_values() {
        let rec = paper_counterexample(0.5).unwrap();
        assert!((rec.lhs - 0.316_227_766_016_837_94).abs() <= 1e-12);
        assert!((rec.rhs - 0.353_553_390_593_273_73).abs() <= 1e-12);
        assert!((rec.gap + 0.037_325_624_576_435_79).abs() <= 1e-12);
        assert!(rec.gap < 0.0);
    }

    #[test]
    fn counterexample_endpoints_have_zero_gap() {
        let at0 = paper_counterexample(0.0).unwrap();
        assert!(at0.lhs.abs() <= 1e-12 && at0.rhs.abs() <= 1e-12);
        let at1 = paper_counterexample(1.0).unwrap();
        assert!((at1.lhs - 1.0 / std::f64::consts::SQRT_2).abs() <= 1e-12);
        assert!(at1.gap.abs() <= 1e-12);
    }

    #[test]
    fn counterexample_rejects_out_of_range_weight() {
        assert!(paper_counterexample(-0.1).is_err());
        assert!(paper_counterexample(1.1).is_err());
    }

    #[test]
    fn counterexample_closed_forms_hold_on_grid() {
        for k in 0..=100 {
            let p = k as f64 / 100.0;
            let rec = paper_counterexample(p).unwrap();
            assert!((rec.lhs - counterexample_closed_form_lhs(p)).abs() <= 1e-12);
            assert!((rec.rhs - counterexample_closed_form_rhs(p)).abs() <= 1e-12);
            if (0.05..=0.95).contains(&p) {
                assert!(rec.gap < -1e-6, "gap {} at p {}", rec.gap, p);
            }
        }
    }

    #[test]
    fn concavity_gap_vanishes_for_equal_states() {
        let rng = RandomSource::new(80);
        let mut child = rng.derive(0);
        let rho = random_density(2, 2, &mut child).unwrap();
        let sigma = random_density(2, 2, &mut child).unwrap();
        for p in [0.0, 0.3, 1.0] {
            let rec =
                concavity_gap(StateMeasure::Alt, &rho, &rho, &sigma, p).unwrap();
            assert!(rec.gap.abs() <= 1e-12);
        }
    }

    #[test]
    fn concavity_gap_matches_recomputation() {
        let rng = RandomSource::new(81);
        let mut child = rng.derive(0);
        let rho1 = random_density(2, 2, &mut child).unwrap();
        let rho2 = random_density(2, 2, &mut child).unwrap();
        let sigma = random_density(2, 2, &mut child).unwrap();
        let p = 0.37;
        let rec = concavity_gap(StateMeasure::Alt, &rho1, &rho2, &sigma, p).unwrap();
        let mixed =
            DensityMatrix::mix(&[p, 1.0 - p], &[rho1.clone(), rho2.clone()]).unwrap();
        let lhs = alt_fidelity(&mixed, &sigma).unwrap();
        let rhs = p * alt_fidelity(&rho1, &sigma).unwrap()
            + (1.0 - p) * alt_fidelity(&rho2, &sigma).unwrap();
        assert!((rec.lhs - lhs).abs() <= 1e-14);
        assert!((rec.rhs - rhs).abs() <= 1e-14);
        assert!((rec.gap - (lhs - rhs)).abs() <= 1e-14);
    }

    #[test]
    fn sweep_on_counterexample_family_finds_no_satisfied_samples() {
        let rng = RandomSource::new(82);
        let report = concavity_sweep(
            StateMeasure::Alt,
            2,
            200,
            &rng,
            SweepFamily::Counterexample,
        )
        .unwrap();
        assert_eq!(report.satisfied_fraction, Some(0.0));
        assert!(report.min_gap.unwrap() < -1e-6);
        assert!(report.witness.is_some());
    }

    #[test]
    fn sweep_is_reproducible_for_fixed_seed() {
        let run = || {
            concavity_sweep(
                StateMeasure::Alt,
                2,
                500,
                &RandomSource::new(42),
                SweepFamily::Random,
            )
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a.satisfied_fraction, b.satisfied_fraction);
        assert_eq!(a.min_gap.unwrap().to_bits(), b.min_gap.unwrap().to_bits());
        assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn jozsa_axioms_pass_for_alt() {
        let rng = RandomSource::new(7);
        let reports = check_jozsa_axioms(
            StateMeasure::Alt,
            4,
            500,
            &rng,
            JozsaTolerances::default_for(StateMeasure::Alt),
        )
        .unwrap();
        assert_eq!(reports.len(), 4);
        for r in &reports {
            assert!(r.passed, "{}: violation {}", r.property_name, r.max_violation);
        }
    }

    #[test]
    fn jozsa_rejects_zero_samples() {
        let rng = RandomSource::new(1);
        assert!(check_jozsa_axioms(
            StateMeasure::Alt,
            2,
            0,
            &rng,
            JozsaTolerances::uniform(1e-9)
        )
        .is_err());
    }

    #[test]
    fn uhlmann_pure_pure_reduction_is_overlap() {
        // Spot-check the Uhlmann pure-state branch directly.
        let mut rng = RandomSource::new(83);
        for _ in 0..50 {
            let psi = PureState::random(3, &mut rng).unwrap();
            let phi = PureState::random(3, &mut rng).unwrap();
            let overlap: Complex64 = psi
                .amplitudes()
                .iter()
                .zip(phi.amplitudes().iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            let f = uhlmann(&psi.density().unwrap(), &phi.density().unwrap()).unwrap();
            assert!((f - overlap.norm()).abs() <= 1e-8);
        }
    }

    #[test]
    fn multiplicativity_holds_for_alt_and_uhlmann() {
        let rng = RandomSource::new(9);
        let alt = check_multiplicativity(StateMeasure::Alt, 2, 2, 200, &rng).unwrap();
        assert!(alt.passed, "alt violation {}", alt.max_violation);
        let uhl = check_multiplicativity(StateMeasure::Uhlmann, 2, 2, 200, &rng).unwrap();
        assert!(uhl.passed, "uhlmann violation {}", uhl.max_violation);
    }

    #[test]
    fn multiplicativity_identical_factor_reduces() {
        let rng = RandomSource::new(84);
        let mut child = rng.derive(0);
        let a = random_density(2, 2, &mut child).unwrap();
        let c = random_density(2, 2, &mut child).unwrap();
        let b = random_density(3, 3, &mut child).unwrap();
        let joint = alt_fidelity(
            &DensityMatrix::tensor(&a, &b).unwrap(),
            &DensityMatrix::tensor(&c, &b).unwrap(),
        )
        .unwrap();
        let split = alt_fidelity(&a, &c).unwrap() * alt_fidelity(&b, &b).unwrap();
        assert!((joint - split).abs() <= 1e-9);
    }

    #[test]
    fn multiplicativity_fails_for_super_as_expected() {
        let rng = RandomSource::new(10);
        let report = check_multiplicativity(StateMeasure::Super, 2, 2, 200, &rng).unwrap();
        assert!(!report.passed);
        assert!(report.expect_violation);
        assert!(report.max_violation > INFORMATIONAL_VIOLATION_FLOOR);
        assert!(report.effective_pass());
        assert!(report.witness.is_some());
    }

    #[test]
    fn qubit_reduction_holds() {
        let rng = RandomSource::new(11);
        let reports = check_qubit_reduction(1000, &rng).unwrap();
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert!(r.passed, "{}: violation {}", r.property_name, r.max_violation);
        }
    }

    #[test]
    fn superfidelity_bound_holds_in_squared_convention() {
        let rng = RandomSource::new(12);
        for d in [2usize, 3, 4] {
            let report = check_superfidelity_bound(d, 300, &rng).unwrap();
            assert!(report.passed, "d={d}: violation {}", report.max_violation);
        }
    }

    #[test]
    fn superfidelity_bound_witness_rejects_unsquared_reading() {
        let zero = PureState::basis(2, 0).unwrap().density().unwrap();
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        let sup = super_fidelity(&zero, &mixed).unwrap();
        let u = uhlmann(&zero, &mixed).unwrap();
        assert!((sup - 0.5).abs() <= 1e-10);
        assert!((u - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-8);
        assert!(sup < u, "unsquared bound would have to fail here");
        assert!(sup >= u * u - 1e-8, "squared bound holds with equality");
    }

    #[test]
    fn wick_identity_holds() {
        let rng = RandomSource::new(13);
        let report = check_wick(4, 20, &[0.1, 0.5, 1.0, 2.0], &rng).unwrap();
        assert!(report.passed, "violation {}", report.max_violation);
    }

    #[test]
    fn wick_rejects_oversized_dimension_and_empty_grid() {
        let rng = RandomSource::new(14);
        assert!(check_wick(9, 5, &[0.1], &rng).is_err());
        assert!(check_wick(4, 5, &[], &rng).is_err());
    }

    #[test]
    fn report_invariant_passed_iff_within_tolerance() {
        let rng = RandomSource::new(15);
        let reports = check_jozsa_axioms(
            StateMeasure::Alt,
            2,
            5,
            &rng,
            JozsaTolerances::uniform(0.0),
        )
        .unwrap();
        // Zero tolerance: floating-point residue must fail at least one
        // axiom, and every failing report carries a witness.
        assert!(reports.iter().any(|r| !r.passed));
        for r in reports.iter().filter(|r| !r.passed) {
            assert!(r.witness.is_some());
            assert!(r.max_violation > r.tolerance);
        }
    }
}
