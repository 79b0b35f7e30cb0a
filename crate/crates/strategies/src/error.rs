use engine::{GameError, Player};
use hypercore::{Edge, Vertex};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    /// The builder needed an edge that is already taken.
    #[error("builder stuck on move {step}: {edge} is taken")]
    BuilderStuck { step: usize, edge: Edge },
    #[error("builder move {step} introduced vertex {vertex}, which is already in play")]
    NotFresh { step: usize, vertex: Vertex },
    #[error("builder move {step} needs the opponent's move {needed}, which has not been played")]
    OpponentMoveMissing { step: usize, needed: usize },
    #[error("builder has already made all {0} moves")]
    BuilderFinished(usize),
    /// Several distinct free completing edges for FP at once. Impossible
    /// along strategy-driven lines, so reaching it is a bug or a refutation.
    #[error("theorem violation at ply {ply}: {detail}")]
    TheoremViolation { ply: usize, detail: String },
    #[error("strategy precondition failed: {0}")]
    Precondition(String),
    #[error("it is {0}'s turn, not SP's")]
    NotSpTurn(Player),
    #[error(transparent)]
    Game(#[from] GameError),
}
