use thiserror::Error;

/// Errors raised by constructors, loaders and structural operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrcError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("axiom {name} fails at {witness:?}")]
    AxiomFailure { name: String, witness: Vec<usize> },
    #[error("junction mismatch: {left} is not {right}")]
    JunctionMismatch { left: usize, right: usize },
    #[error("partition is incompatible with {op} at {witness:?}")]
    Incompatible { op: String, witness: Vec<usize> },
    #[error("{what} has size {size}, above the cap of {cap}")]
    TooLarge { what: String, size: usize, cap: usize },
    #[error("undefined: {0}")]
    Undefined(String),
}

pub type Result<T> = std::result::Result<T, DrcError>;

impl From<serde_json::Error> for DrcError {
    fn from(e: serde_json::Error) -> Self {
        DrcError::Malformed(e.to_string())
    }
}
