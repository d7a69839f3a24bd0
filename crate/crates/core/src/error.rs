use thiserror::Error;

pub type Result<T> = std::result::Result<T, CoreError>;

#[derive(Debug, Error)]
pub enum CoreError {
    /// Source/target spaces of two maps disagree where they must match.
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    /// A caller-supplied value is outside the operation's domain.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A documented precondition does not hold for the given data.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Quotient of spaces that are not nested.
    #[error("image not contained in kernel")]
    Containment,

    /// Structurally inconsistent data (unknown labels, degree clashes, ...).
    #[error("structural error: {0}")]
    Structural(String),

    /// A fixture file could not be interpreted.
    #[error("fixture error: {0}")]
    Fixture(String),
}
