use thiserror::Error;

/// Failures raised by the search and evolution routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The start state has (numerically) no overlap with the target, so no
    /// rotation in the search plane can reach it.
    #[error("start state is orthogonal to the target: |<w|sigma>| = {overlap:e}")]
    OrthogonalStart { overlap: f64 },

    /// The start state is the target up to phase; the search plane collapses
    /// to a line.
    #[error("start state coincides with the target: |<w|sigma>| = {overlap}; the search plane is degenerate")]
    DegeneratePlane { overlap: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("linear algebra backend failure: {0}")]
    Backend(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
