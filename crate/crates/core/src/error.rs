use thiserror::Error;

/// Errors raised by graph construction and the algebraic operations built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("operation requires a graph with at least one vertex")]
    EmptyGraph,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("orientation sign must be +1 or -1, got {0}")]
    InvalidSign(i64),
    #[error("subgraphs belong to different parent graphs")]
    ParentMismatch,
    #[error("edge {edge} has an endpoint outside the subgraph vertex set")]
    DanglingEdge { edge: usize },
    #[error("vertex map is not a graph homomorphism: edge ({0}, {1}) has no image edge")]
    NotHomomorphism(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cover does not satisfy A ∪ B = Γ")]
    InvalidCover,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
