use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quantale mode mismatch: {0} vs {1}")]
    ModeMismatch(String, String),

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("value {value} is outside the carrier of mode {mode}")]
    ValueOutOfRange { value: String, mode: String },

    #[error("empty set where a nonempty one is required: {0}")]
    EmptySet(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported in this mode: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("axiom violation: {0}")]
    Axiom(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
