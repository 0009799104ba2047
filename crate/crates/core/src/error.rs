use thiserror::Error;

/// Errors raised by construction and validation routines.
///
/// A failing *check* (say, a metric that turns out not to be Einstein) is
/// reported as data, never as an error.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range input supplied by the caller.
    #[error("invalid input: {0}")]
    Input(String),
    /// A Cartan matrix violated one of the finite-type invariants.
    #[error("invalid Cartan matrix ({invariant}): {detail}")]
    Cartan { invariant: &'static str, detail: String },
    /// Internal consistency failure while building an object.
    #[error("construction failed: {0}")]
    Construction(String),
    /// An operation was called on an object lacking a required property.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Degenerate input such as a zero vector where a direction is needed.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn construction(msg: impl Into<String>) -> Self {
        Error::Construction(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Whether this error stems from bad caller input rather than a failed
    /// internal check.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Input(_) | Error::Cartan { .. } | Error::Degenerate(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
