//! Simulation harness: games between the drawing strategy and the
//! adversary suite, post hoc transcript monitors, seeded campaigns and
//! transcript replay.

pub mod campaign;
pub mod cli;
mod error;
pub mod game;
pub mod monitors;
pub mod replay;

pub use campaign::{
    default_specs, parse_specs, run_campaign, CampaignReport, GameSpec, GameSummary, SEEDS_ENV,
};
pub use error::SimError;
pub use game::{assemble, play, run_game, Played};
pub use monitors::{evaluate, evaluate_states, MONITORS};
pub use replay::{rederive, replay_text, ReplayCheck};
