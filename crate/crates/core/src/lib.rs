//! Simulation of two qubits driven by classical memoryless (white) noise in
//! transverse and/or longitudinal fields, together with the quantum and
//! classical correlation measures needed to characterize the resulting states.
//!
//! The crate is organized in three layers:
//!
//! * [`qstate`] — two-qubit state representations ([`DensityMatrix`],
//!   [`XState`]) and factories for the initial-state families of interest
//!   (product, Bell, Bell-like, mixtures).
//! * [`noisedyn`] — the master-equation generator for global and local noise
//!   topologies, a fixed-step RK4 integrator, the closed-form dephasing
//!   propagator, and the steady-state maps for each noise combination.
//! * [`correlations`] — entanglement of formation, quantum discord and
//!   classical correlations, geometric discord, mutual information, linear
//!   entropy, plus a brute-force measurement-optimization discord oracle.
//!
//! All quantities are dimensionless: energies and noise strengths are in
//! units of the transverse-field frequency ω, times in units of 1/ω.

pub mod correlations;
mod error;
pub mod noisedyn;
pub mod qstate;

pub use correlations::{CorrelationRecord, MeasuredParty};
pub use error::{Error, Result};
pub use noisedyn::{ConservationReport, EvolutionConfig, Trajectory};
pub use qstate::{
    AlphaFamily, BellState, CoherenceSign, DensityMatrix, HamiltonianParams, NoiseConfig,
    NoiseTopology, ProductState, XState,
};
