use std::io;

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid urn: {0}")]
    InvalidUrn(String),

    #[error("ball count overflowed 64 bits")]
    UrnOverflow,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph would exceed the vertex budget of {limit} vertices")]
    TooLarge { limit: usize },

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("{0} and {1} are not adjacent")]
    NotAnEdge(usize, usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("clustering coefficient undefined: vertex {0} has degree below 2")]
    DegreeTooSmall(usize),

    #[error("exhaustive expansion needs at most {limit} vertices, graph has {actual}")]
    GraphTooLargeForExact { limit: usize, actual: usize },

    #[error("invalid clique: {0}")]
    InvalidClique(String),

    #[error("round {round} is outside 1..={steps}")]
    CutOutOfRange { round: usize, steps: usize },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("fraction {0} is outside (0, 1]")]
    InvalidFraction(f64),

    #[error("malformed graph file, line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("schema mismatch: expected {expected}, found {found}")]
    Schema { expected: String, found: String },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
