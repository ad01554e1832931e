//! Error type shared by all modules.

use crate::degenerate::CubicClassification;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller-supplied argument is outside the supported domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A value left the representable range (overflow or underflow).
    #[error("out of range: {0}")]
    Range(String),

    /// An iterative solver exhausted its budget without reaching tolerance.
    #[error("solver did not converge: {0}")]
    NoConvergence(String),

    /// Independent evaluation routes disagree beyond tolerance.
    #[error("numerical consistency check failed: {0}")]
    Inconsistent(String),

    /// The computation would exceed the iteration/memory budget.
    #[error("resource budget exceeded: {0}")]
    Resource(String),

    /// The requested quantity is outside the validity range of its formula.
    #[error("outside validity range: {0}")]
    OutOfValidity(String),

    /// The Fermi-energy cubic has no admissible positive root.
    #[error("no positive Fermi-energy root: {reason}")]
    Unsolvable {
        reason: String,
        classification: Box<CubicClassification>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
