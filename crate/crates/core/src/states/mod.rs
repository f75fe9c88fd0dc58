//! Validated quantum states, Hamiltonians, and the seeded random ensembles
//! behind the numerical sweeps.

mod density;
mod random;

pub use density::{
    thermal_state, DensityMatrix, Hamiltonian, PureState, StateTolerances, MIN_STATE_DIM,
};
pub use random::{random_density, random_unitary, RandomSource, RNG_ALGORITHM};
