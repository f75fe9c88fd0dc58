//! Cross-measure property suite over seeded random ensembles: ranges,
//! axioms, multiplicativity, orthogonality, and the dual-path consistency
//! identities.

use num_complex::Complex64;

use quditfid_core::fidelity::{
    alt_fidelity, thermal_fidelity, uhlmann, StateMeasure,
};
use quditfid_core::linalg::ComplexMatrix;
use quditfid_core::properties::{
    check_jozsa_axioms, check_multiplicativity, check_qubit_reduction, check_superfidelity_bound,
    check_wick, JozsaTolerances,
};
use quditfid_core::states::{random_density, DensityMatrix, Hamiltonian, RandomSource};

const DIMS: [usize; 4] = [2, 3, 4, 8];

#[test]
fn every_measure_stays_in_range_on_random_pairs() {
    let rng = RandomSource::new(101);
    for &d in &DIMS {
        for i in 0..500u64 {
            let mut child = rng.derive(i + 10_000 * d as u64);
            let a = random_density(d, d, &mut child).unwrap();
            let b = random_density(d, d, &mut child).unwrap();
            for measure in StateMeasure::ALL {
                let v = measure.compute(&a, &b).unwrap();
                assert!(
                    (-1e-12..=1.0 + 1e-12).contains(&v),
                    "{measure} out of range at d={d}: {v}"
                );
            }
        }
    }
}

#[test]
fn jozsa_axioms_hold_for_all_measures_at_default_tolerances() {
    for &d in &DIMS {
        for measure in StateMeasure::ALL {
            let rng = RandomSource::new(7 + d as u64);
            let reports = check_jozsa_axioms(
                measure,
                d,
                500,
                &rng,
                JozsaTolerances::default_for(measure),
            )
            .unwrap();
            for r in &reports {
                assert!(
                    r.passed,
                    "{measure} {} failed at d={d}: violation {:.3e} > {:.1e}",
                    r.property_name, r.max_violation, r.tolerance
                );
            }
        }
    }
}

#[test]
fn multiplicativity_verdicts_match_the_measure() {
    for (d1, d2) in [(2usize, 2usize), (2, 3)] {
        let rng = RandomSource::new(900 + (d1 * 10 + d2) as u64);
        let alt = check_multiplicativity(StateMeasure::Alt, d1, d2, 200, &rng).unwrap();
        assert!(alt.passed, "alt at ({d1},{d2}): {}", alt.max_violation);

        let uhl = check_multiplicativity(StateMeasure::Uhlmann, d1, d2, 200, &rng).unwrap();
        assert!(uhl.passed, "uhlmann at ({d1},{d2}): {}", uhl.max_violation);

        let sup = check_multiplicativity(StateMeasure::Super, d1, d2, 200, &rng).unwrap();
        assert!(sup.expect_violation && sup.effective_pass());
        assert!(sup.max_violation > 1e-3);
    }
}

/// Orthogonal mixed states built from disjoint support blocks.
fn orthogonal_pair(d_block: usize, rng: &mut RandomSource) -> (DensityMatrix, DensityMatrix) {
    let a = random_density(d_block, d_block, rng).unwrap();
    let b = random_density(d_block, d_block, rng).unwrap();
    let d = 2 * d_block;
    let embed = |m: &ComplexMatrix, offset: usize| {
        ComplexMatrix::from_fn(d, |i, j| {
            if i >= offset && i < offset + d_block && j >= offset && j < offset + d_block {
                m.get(i - offset, j - offset)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .unwrap()
    };
    (
        DensityMatrix::from_matrix(embed(a.matrix(), 0)).unwrap(),
        DensityMatrix::from_matrix(embed(b.matrix(), d_block)).unwrap(),
    )
}

#[test]
fn orthogonal_states_have_zero_fidelity() {
    let mut rng = RandomSource::new(303);
    for _ in 0..50 {
        let (rho0, rho1) = orthogonal_pair(2, &mut rng);
        let overlap = rho0.matrix().trace_product(rho1.matrix()).unwrap();
        assert!(overlap.re.abs() <= 1e-14);
        assert!(alt_fidelity(&rho0, &rho1).unwrap() <= 1e-12);
        assert!(uhlmann(&rho0, &rho1).unwrap() <= 1e-6);
    }
}

#[test]
fn thermal_fidelity_is_consistent_with_state_fidelity() {
    let rng = RandomSource::new(404);
    for &d in &[2usize, 4, 8] {
        for i in 0..10u64 {
            let mut child = rng.derive(i + 100 * d as u64);
            let h0 = Hamiltonian::random(d, &mut child).unwrap();
            let h1 = Hamiltonian::random(d, &mut child).unwrap();
            for beta in [0.0, 0.5, 1.0, 10.0, 1000.0] {
                let direct = thermal_fidelity(&h0, &h1, beta).unwrap();
                let via_states = alt_fidelity(
                    &h0.thermal_state(beta).unwrap(),
                    &h1.thermal_state(beta).unwrap(),
                )
                .unwrap();
                assert!(
                    (direct - via_states).abs() <= 1e-10,
                    "d={d} beta={beta}: {direct} vs {via_states}"
                );
            }
        }
    }
}

#[test]
fn wick_identity_holds_across_dimensions() {
    for &d in &[2usize, 4, 8] {
        let rng = RandomSource::new(505 + d as u64);
        let report = check_wick(d, 20, &[0.1, 0.5, 1.0, 2.0], &rng).unwrap();
        assert!(
            report.passed,
            "d={d}: violation {:.3e}",
            report.max_violation
        );
    }
}

#[test]
fn qubit_closed_form_oracle_cross_validates_uhlmann() {
    let rng = RandomSource::new(606);
    let reports = check_qubit_reduction(1000, &rng).unwrap();
    for r in &reports {
        assert!(
            r.passed,
            "{}: violation {:.3e}",
            r.property_name, r.max_violation
        );
    }
}

#[test]
fn superfidelity_upper_bound_in_squared_convention() {
    for &d in &[2usize, 3, 4] {
        let rng = RandomSource::new(707 + d as u64);
        let report = check_superfidelity_bound(d, 1000, &rng).unwrap();
        assert!(report.passed, "d={d}: {:.3e}", report.max_violation);
    }
}
