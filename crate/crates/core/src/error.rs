use thiserror::Error;

/// Errors surfaced by ring construction and the degree computations.
///
/// Every recoverable failure is structured so the CLI can map it to a stable
/// exit code: `OutOfRange` means the inputs name a space the library refuses
/// to model, the rest are misuse of an otherwise valid space.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("out of implemented range: {0}")]
    OutOfRange(String),
    #[error("dimension constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("operation requires a Grassmannian ring: {0}")]
    NotTypeA(String),
    #[error("complex eigenvalue encountered: {0}")]
    ComplexEigenvalue(String),
    #[error("inadmissible residue class: {0}")]
    InadmissibleResidue(String),
    #[error("inadmissible branch: {0}")]
    InadmissibleBranch(String),
    #[error("inadmissible parity: {0}")]
    InadmissibleParity(String),
    #[error("unknown space: {0}")]
    UnknownSpace(String),
}

pub type Result<T> = std::result::Result<T, Error>;
