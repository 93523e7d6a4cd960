use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty sample")]
    EmptySample,

    #[error("points are equal in the tropical projective torus; the segment is empty")]
    EmptySegment,

    #[error("point is not in the Bergman fan of the matroid")]
    NotInFan,

    #[error("point is constant on every circuit; w_min is undefined")]
    DegeneratePoint,

    #[error("degenerate polytope: coordinate {0} is -inf in every vertex")]
    DegeneratePolytope(usize),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("matroid is not connected: {0}")]
    Disconnected(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
