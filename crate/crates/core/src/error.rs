use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state has zero norm and cannot be normalized")]
    ZeroNorm,

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("{which} basis is not orthonormal (max Gram deviation {deviation:.3e})")]
    NotOrthonormal { which: &'static str, deviation: f64 },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimensions {d_a} x {d_b} do not factor a space of dimension {dim}")]
    Factorization { dim: usize, d_a: usize, d_b: usize },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid atomic system: {0}")]
    InvalidSystem(String),

    #[error("unknown excited level `{0}`")]
    UnknownLevel(String),

    #[error("invalid polarization mode: {0}")]
    InvalidMode(String),

    #[error("state outside the clonable domain: component `{component}` (weight {weight:.3e}) couples through a forbidden transition")]
    DomainViolation { component: String, weight: f64 },

    #[error("no allowed decay channel: total transition weight is zero")]
    NoDecayChannel,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
