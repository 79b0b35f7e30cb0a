use hypercore::{Edge, HyperError, Vertex};
use thiserror::Error;

use crate::state::Player;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("it is {expected}'s turn")]
    NotYourTurn { expected: Player },
    #[error("edge {0} is already claimed")]
    EdgeTaken(Edge),
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("vertex {0} has degree {1} in the target, need 2")]
    NotDegreeTwo(Vertex, usize),
    #[error(transparent)]
    Hyper(#[from] HyperError),
}
