use thiserror::Error;

use crate::edge::{Edge, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperError {
    #[error("vertex {0} appears more than once in an edge")]
    DuplicateVertex(Vertex),
    #[error("edge has {found} vertices, uniformity is {expected}")]
    WrongArity { expected: usize, found: usize },
    #[error("vertex {0} is not in the hypergraph")]
    UnknownVertex(Vertex),
    #[error("edge {0} is not in the hypergraph")]
    UnknownEdge(Edge),
    #[error("uniformity must be at least 2, got {0}")]
    BadUniformity(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("map is not injective: {0} has two preimages")]
    NotInjective(Vertex),
}
