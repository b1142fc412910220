use thiserror::Error;

use crate::graph::Vertex;
use crate::minor::MinorModel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),

    #[error("size cap exceeded: {what} has {size} vertices, cap is {cap}")]
    SizeCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("arithmetic overflow evaluating {0}")]
    Overflow(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("counterexample candidate: {0}")]
    CounterexampleCandidate(String),

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not in the class: {reason}")]
    NotInClass {
        reason: String,
        model: Option<Box<MinorModel>>,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
