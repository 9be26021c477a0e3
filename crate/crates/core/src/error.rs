use std::io;

use thiserror::Error;

/// Errors produced while loading, preprocessing or solving.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("empty weight distribution")]
    EmptyWeights,

    #[error("statistics query outside tracked range: {0}")]
    Query(String),

    #[error(
        "verification failed on graph {graph}, source {source_vertex}: vertex {vertex} \
         has distance {got} but oracle says {expected}"
    )]
    Verification {
        graph: String,
        source_vertex: u32,
        vertex: u32,
        got: f64,
        expected: f64,
    },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
