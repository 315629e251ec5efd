//! Shared fixtures for the benchmark targets.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcorr::qstate::{BellState, DensityMatrix, ProductState, XState};

/// Deterministic batch of random valid X states.
pub fn sampled_states(count: usize) -> Vec<XState> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBE9C4);
    (0..count).map(|_| XState::sample(&mut rng)).collect()
}

/// The maximally discordant separable steady state reached from |gg⟩.
pub fn discordant_steady() -> XState {
    let gg = DensityMatrix::product(ProductState::Gg).to_x_state().unwrap();
    qcorr::noisedyn::steady_collective(&gg)
}

/// A maximally entangled reference state.
pub fn bell_state() -> XState {
    DensityMatrix::bell(BellState::PhiPlus).to_x_state().unwrap()
}
