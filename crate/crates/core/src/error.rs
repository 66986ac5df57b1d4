use thiserror::Error;

/// Errors returned by mu-lab operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph of order {order} exceeds the limit of {cap} for this operation")]
    TooLarge { order: usize, cap: usize },
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no simple graph found after {0} attempts")]
    RetryLimit(usize),
    #[error("graph is not regular")]
    NotRegular,
    #[error("path is not induced")]
    PathNotInduced,
    #[error("no path vertex has a neighbour off the path")]
    DegreeTooLow,
    #[error("inconsistent report: {0}")]
    InconsistentReport(String),
    #[error("computation exceeds budget: {0}")]
    Budget(String),
    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
