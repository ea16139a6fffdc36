use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("band ({j},{k}) of a valid partition has an empty integer lattice")]
    EmptyLattice { j: i32, k: String },

    #[error("contraction requires a positive scale index, got {0}")]
    InvalidContraction(i32),

    #[error("frame index {0} lies outside the spec truncation")]
    IndexOutOfRange(String),

    #[error("signal tail mass {tail:.3e} outside |omega| <= {omega_max} exceeds the 1e-10 budget")]
    BandwidthViolation { tail: f64, omega_max: f64 },

    #[error("operation requires dimension {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("coefficient table mode mismatch: {0}")]
    TableMode(String),

    #[error("zero-norm member '{0}' in signal family")]
    ZeroNormSignal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
