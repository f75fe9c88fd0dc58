//! Fidelity measures for mixed states of qudits.
//!
//! The crate provides dense complex linear algebra ([`linalg`]), validated
//! quantum states and Hamiltonians ([`states`]), five fidelity measures
//! ([`fidelity`]) including the O(d²) normalized Hilbert-Schmidt overlap,
//! and an executable property suite ([`properties`]) covering axiom checks,
//! multiplicativity, concavity sweeps, and the thermal/unitary connection.
//!
//! All randomized routines are driven by a seeded [`states::RandomSource`];
//! results are reproducible bit-for-bit for a fixed seed, with or without
//! the `parallel` feature.

pub mod error;
pub mod exec;
pub mod fidelity;
pub mod linalg;
pub mod properties;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Spectrum};
pub use states::{DensityMatrix, Hamiltonian, PureState, RandomSource};
