//! Versioned game transcripts as JSON lines.
//!
//! Line 1 is the header, then one line per move, then (once the game is
//! over) a footer with the outcome and monitor verdicts. Serialization is
//! deterministic, so a transcript re-derived from its own moves must be
//! byte-identical to the original.

use std::sync::Arc;

use hypercore::Edge;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::GameError;
use crate::state::{GameState, Player};
use crate::target::{Target, TargetDescriptor};
use crate::threat::{Threat, ThreatKind};

pub const FORMAT: &str = "h5-transcript";
pub const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum TranscriptError {
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: {msg}")]
    Shape { line: usize, msg: String },
    #[error("unsupported transcript {format:?} version {version}")]
    Version { format: String, version: u32 },
    #[error("move {index} does not replay: {source}")]
    Replay {
        index: usize,
        #[source]
        source: GameError,
    },
    #[error(transparent)]
    Target(#[from] GameError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpDriver {
    /// Every SP move came from the drawing strategy.
    Strategy,
    /// SP moves were supplied externally (stubs, hand-built positions).
    Manual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Header {
    pub format: String,
    pub version: u32,
    pub target: TargetDescriptor,
    pub adversary: String,
    pub seed: u64,
    pub horizon: usize,
    pub sp_driver: SpDriver,
}

impl Header {
    pub fn new(
        target: &Target,
        adversary: &str,
        seed: u64,
        horizon: usize,
        sp_driver: SpDriver,
    ) -> Header {
        Header {
            format: FORMAT.to_string(),
            version: VERSION,
            target: target.descriptor(),
            adversary: adversary.to_string(),
            seed,
            horizon,
            sp_driver,
        }
    }
}

/// Summary of the threats a move leaves its mover with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThreatClass {
    None,
    Standard,
    Special,
    Mixed,
}

impl ThreatClass {
    pub fn of(threats: &[Threat]) -> ThreatClass {
        let std = threats.iter().any(|t| t.kind == ThreatKind::Standard);
        let spe = threats.iter().any(|t| t.kind == ThreatKind::Special);
        match (std, spe) {
            (false, false) => ThreatClass::None,
            (true, false) => ThreatClass::Standard,
            (false, true) => ThreatClass::Special,
            (true, true) => ThreatClass::Mixed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ThreatNote {
    pub completing: Edge,
    pub kind: ThreatKind,
    pub template: Edge,
}

impl From<&Threat> for ThreatNote {
    fn from(t: &Threat) -> Self {
        ThreatNote {
            completing: t.completing_edge.clone(),
            kind: t.kind,
            template: t.template_edge.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Annotations {
    /// Classification of the mover's threats right after the move.
    pub threat_class: ThreatClass,
    pub fp_threats: Vec<ThreatNote>,
    pub sp_threats: Vec<ThreatNote>,
    /// Strategy stage that produced an SP move.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Threat annotations for the position right after `mover` moved.
pub fn annotate(after: &GameState, mover: Player) -> Annotations {
    let fp = after.threats(Player::First);
    let sp = after.threats(Player::Second);
    let notes = |ts: &[Threat]| {
        let mut v: Vec<ThreatNote> = ts.iter().map(ThreatNote::from).collect();
        v.sort();
        v.dedup();
        v
    };
    let mine = if mover == Player::First { &fp } else { &sp };
    Annotations {
        threat_class: ThreatClass::of(mine),
        fp_threats: notes(&fp),
        sp_threats: notes(&sp),
        stage: None,
        warnings: Vec::new(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MoveRecord {
    pub move_index: usize,
    pub player: Player,
    pub edge: Edge,
    pub annotations: Annotations,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    FpWin,
    SpWin,
    OngoingAtHorizon,
    /// The run stopped on an error; see `failure`.
    Aborted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MonitorVerdict {
    pub monitor: String,
    pub applicable: bool,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_violation_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Footer {
    pub outcome: Outcome,
    pub monitors: Vec<MonitorVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub header: Header,
    pub moves: Vec<MoveRecord>,
    pub footer: Option<Footer>,
}

impl Transcript {
    pub fn new(header: Header) -> Transcript {
        Transcript {
            header,
            moves: Vec::new(),
            footer: None,
        }
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::to_string(&self.header).expect("header serializes");
        out.push('\n');
        for m in &self.moves {
            out.push_str(&serde_json::to_string(m).expect("move serializes"));
            out.push('\n');
        }
        if let Some(f) = &self.footer {
            out.push_str(&serde_json::to_string(f).expect("footer serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Transcript, TranscriptError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or(TranscriptError::Shape {
            line: 1,
            msg: "empty transcript".into(),
        })?;
        let header: Header = serde_json::from_str(first)
            .map_err(|source| TranscriptError::Json { line: 1, source })?;
        if header.format != FORMAT || header.version != VERSION {
            return Err(TranscriptError::Version {
                format: header.format,
                version: header.version,
            });
        }
        let mut t = Transcript::new(header);
        for (i, line) in lines {
            let line_no = i + 1;
            if t.footer.is_some() {
                return Err(TranscriptError::Shape {
                    line: line_no,
                    msg: "content after footer".into(),
                });
            }
            let value: serde_json::Value =
                serde_json::from_str(line).map_err(|source| TranscriptError::Json {
                    line: line_no,
                    source,
                })?;
            if value.get("outcome").is_some() {
                t.footer = Some(serde_json::from_value(value).map_err(|source| {
                    TranscriptError::Json {
                        line: line_no,
                        source,
                    }
                })?);
            } else {
                let m: MoveRecord =
                    serde_json::from_value(value).map_err(|source| TranscriptError::Json {
                        line: line_no,
                        source,
                    })?;
                if m.move_index != t.moves.len() {
                    return Err(TranscriptError::Shape {
                        line: line_no,
                        msg: format!("expected move {}, found {}", t.moves.len(), m.move_index),
                    });
                }
                t.moves.push(m);
            }
        }
        Ok(t)
    }

    pub fn target(&self) -> Result<Arc<Target>, TranscriptError> {
        Ok(Arc::new(Target::from_descriptor(&self.header.target)?))
    }

    /// Positions after each move, starting from the empty board.
    pub fn states(&self) -> Result<Vec<GameState>, TranscriptError> {
        let mut s = GameState::new(self.target()?);
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(s.clone());
        for m in &self.moves {
            s = s
                .claim(m.player, m.edge.clone())
                .map_err(|source| TranscriptError::Replay {
                    index: m.move_index,
                    source,
                })?;
            out.push(s.clone());
        }
        Ok(out)
    }
}
