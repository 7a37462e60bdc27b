//! Error type shared by every module in the crate.

/// Errors reported by constructors, solvers and streaming states.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Operand shapes do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An argument is outside its documented domain.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// NaN or infinite input reached a public constructor.
    #[error("non-finite input: {0}")]
    NonFinite(String),

    /// A stateful object was used out of protocol.
    #[error("invalid state: {0}")]
    State(String),

    /// Arithmetic overflowed to NaN or infinity mid-computation.
    #[error("numerical overflow: {0}")]
    Computation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
