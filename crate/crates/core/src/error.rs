use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ideals live in different rings")]
    RingMismatch,

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid element {element}: {reason}")]
    InvalidElement { element: String, reason: String },

    #[error("operation `{0}` is not supported for this ring backend")]
    Unsupported(&'static str),

    #[error("ideal is not primary to the maximal ideal: {0}")]
    NotPrimary(String),

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("Ratliff-Rush chain at {index} did not stabilize within {k_max} steps")]
    RatliffRushUnstable { index: String, k_max: u32 },

    #[error("polynomial fit failed after {attempts} attempts (last base offset {last_offset}): {reason}")]
    FitFailed {
        attempts: u32,
        last_offset: i64,
        reason: String,
    },

    #[error("singular sampling system (internal error)")]
    SingularSystem,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a complete reduction: {0}")]
    NotComplete(String),

    #[error("elements do not form a regular sequence: {0}")]
    NotRegularSequence(String),

    #[error("internal containment violation: {0}")]
    Containment(String),
}

pub type Result<T> = std::result::Result<T, Error>;
