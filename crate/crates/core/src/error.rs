use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("arc relation is not symmetric: ({0}, {1}) has no reverse")]
    NotSymmetric(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot orient a graph with a loop at {0}")]
    LoopNotAllowed(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid template: {0}")]
    InvalidTemplate(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("search deadline exceeded")]
    Timeout,

    #[error("more than {limit} homomorphisms")]
    TooManyWitnesses { limit: usize },

    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl HomError {
    /// Guard aborts (as opposed to malformed input) are reported as skips.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            HomError::Timeout
                | HomError::TooManyWitnesses { .. }
                | HomError::Graph(GraphError::SizeGuard(_))
        )
    }
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;
