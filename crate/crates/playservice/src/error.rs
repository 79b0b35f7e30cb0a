use engine::GameError;
use strategies::StrategyError;
use thiserror::Error;

use crate::session::Status;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("no session {0:?}")]
    SessionNotFound(String),
    #[error("session {0} is {1:?}, not Active")]
    NotActive(String, Status),
    #[error("malformed edge: {0}")]
    MalformedEdge(String),
    #[error("malformed request: {0}")]
    MalformedRequest(String),
    #[error("session limit of {0} reached")]
    CapacityExceeded(usize),
    #[error(transparent)]
    Game(GameError),
    #[error(transparent)]
    Strategy(StrategyError),
    #[error("transcript file: {0}")]
    Io(#[from] std::io::Error),
}

impl ServiceError {
    /// Stable error code in reply bodies.
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::SessionNotFound(_) => "SessionNotFound",
            ServiceError::NotActive(..) => "NotActive",
            ServiceError::MalformedEdge(_) => "MalformedEdge",
            ServiceError::MalformedRequest(_) => "MalformedRequest",
            ServiceError::CapacityExceeded(_) => "CapacityExceeded",
            ServiceError::Game(GameError::EdgeTaken(_)) => "EdgeTaken",
            ServiceError::Game(GameError::NotYourTurn { .. }) => "NotYourTurn",
            ServiceError::Game(_) => "MalformedEdge",
            ServiceError::Strategy(_) | ServiceError::Io(_) => "Internal",
        }
    }

    pub fn http_status(&self) -> u16 {
        match self.code() {
            "SessionNotFound" => 404,
            "EdgeTaken" | "NotYourTurn" | "NotActive" => 409,
            "MalformedEdge" | "MalformedRequest" => 400,
            "CapacityExceeded" => 503,
            _ => 500,
        }
    }
}
