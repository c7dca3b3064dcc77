use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular parameter: {0} vanishes at the sample point")]
    SingularParameter(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("sampling failed after {attempts} attempts: {reason}")]
    Sampling { attempts: usize, reason: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("operation not supported by the {backend} backend: {op}")]
    Unsupported { backend: &'static str, op: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("divergent sample: {0}")]
    Divergent(String),
    #[error("non-convergence: {0}")]
    NonConvergence(String),
    #[error("ambiguous solution: {0}")]
    Ambiguous(String),
}

pub type Result<T> = std::result::Result<T, Error>;
