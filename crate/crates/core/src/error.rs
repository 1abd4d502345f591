use thiserror::Error;

use crate::graph::Edge;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("set operand is empty; vertex labels must be non-empty")]
    EmptySet,

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("({}, {}) is not an edge of the graph", .0.0, .0.1)]
    NotAnEdge(Edge),

    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("labeling is not total: vertex {0} has no label")]
    PartialLabeling(usize),

    #[error("search space of {size} candidate labelings exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("graph with {n} vertices exceeds the oracle cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
}

impl Error {
    /// True for refusals caused by size limits rather than bad input.
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::CapExceeded { .. } | Error::Overflow(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
