//! The second player's drawing strategy, the seven-move builder it starts
//! with, and first-player adversaries used to exercise both.

mod adversary;
mod builder;
mod error;
mod sp;

pub use adversary::{adversary_suite, make_adversary, FpAdversary, ADVERSARIES};
pub use builder::{BuildBranch, BuilderStrategy, Lemma41Builder};
pub use error::StrategyError;
pub use sp::{
    sp_move, winner, DrawingStrategy, IdleSp, MoveReason, PendingPair, SecondPlayer, SpCopy,
    SpReply, SpState, Stage,
};
