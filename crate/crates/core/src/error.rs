use thiserror::Error;

/// Errors raised when an operation's preconditions are not met.
///
/// Validation outcomes (is this family a bimatroid? is this polynomial
/// Lorentzian?) are never reported through this type; they are ordinary
/// return values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("ground set of size {size} exceeds the cap of {cap} elements")]
    GroundTooLarge { size: usize, cap: usize },

    #[error("ground sets do not match: {0}")]
    GroundMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Two independent computations of the same quantity disagreed.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
