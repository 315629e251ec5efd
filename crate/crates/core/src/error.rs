use crate::qstate::NoiseTopology;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by state construction, evolution and measurement.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A scalar parameter fell outside its documented domain.
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// Matrix is not Hermitian within tolerance.
    #[error("matrix is not Hermitian (max |rho - rho^†| element = {defect:.3e})")]
    NotHermitian { defect: f64 },

    /// Trace differs from one beyond tolerance.
    #[error("trace = {trace:.15} is not 1 within 1e-12")]
    TraceNotOne { trace: f64 },

    /// Minimum eigenvalue below the positivity tolerance.
    #[error("matrix is not positive semidefinite (min eigenvalue = {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    /// A matrix element outside the X pattern is too large to ignore.
    #[error("element ({row},{col}) = {magnitude:.3e} breaks the X structure (tolerance 1e-10)")]
    NotXStructured {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    /// Integration step too large for the fastest rate in the generator.
    #[error("time step {dt} is too large for the configured rates (require dt <= {limit:.6})")]
    StepTooLarge { dt: f64, limit: f64 },

    /// Noise configuration does not select a well-defined dynamics.
    #[error("noise configuration: {0}")]
    InvalidNoise(String),

    /// An operation specific to one noise topology received the other.
    #[error("operation requires {expected:?} noise topology, got {found:?}")]
    TopologyMismatch {
        expected: NoiseTopology,
        found: NoiseTopology,
    },
}
