use thiserror::Error;

use crate::lattice::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Dimension(String),
    #[error("empty index set")]
    EmptyIndexSet,
    #[error("{0}")]
    Overflow(String),
    #[error("invalid window: {0}")]
    Window(String),
    #[error("malformed value set: {0}")]
    Malformed(String),
    #[error("ambient semigroups differ")]
    AmbientMismatch,
    #[error("{0} is not a member of the ideal")]
    NotMember(Point),
    #[error("dual not a good ideal: {0}")]
    DualInvalid(String),
    #[error("generation failed, retry with new seed ({0})")]
    GenerationFailed(String),
    #[error("reconstruction does not validate: {0}")]
    Reconstruction(String),
    #[error("invalid nu {nu}: {reason}")]
    InvalidNu { nu: Point, reason: String },
    #[error("{0}")]
    Precondition(String),
    #[error("curve ingestion: {0}")]
    Curve(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
