//! Game state, threat detection and transcripts for strong Ramsey games
//! on the infinite board.

mod error;
mod state;
mod target;
mod threat;
pub mod transcript;

pub use error::GameError;
pub use state::{GameState, Player};
pub use target::{Target, TargetDescriptor, Template};
pub use threat::{
    classify, copy_statuses, copy_statuses_through, find_threats, has_win, has_win_through,
    minus_z_copies, minus_z_copies_through, would_threaten, CopyStatus, Threat, ThreatKind,
};
pub use transcript::{
    annotate, Annotations, Footer, Header, MonitorVerdict, MoveRecord, Outcome, SpDriver,
    ThreatClass, ThreatNote, Transcript, TranscriptError,
};
