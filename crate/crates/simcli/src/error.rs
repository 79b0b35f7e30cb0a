use engine::TranscriptError;
use hypercore::Edge;
use strategies::StrategyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("unknown adversary {0:?}")]
    UnknownAdversary(String),
    #[error("horizon {horizon} is below 2m = {need}")]
    Horizon { horizon: usize, need: usize },
    #[error("SP move {index} is {played}, but the strategy plays {strategy}")]
    OffStrategy {
        index: usize,
        played: Edge,
        strategy: Edge,
    },
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Transcript(#[from] TranscriptError),
}
