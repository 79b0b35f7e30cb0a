//! Sessions: a human FP against the drawing strategy.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use engine::{
    annotate, has_win_through, Annotations, Footer, GameState, Header, MonitorVerdict, MoveRecord,
    Outcome, Player, SpDriver, Target, TargetDescriptor, Transcript,
};
use hypercore::{Edge, Vertex};
use serde::{Deserialize, Serialize};
use strategies::{sp_move, SpCopy, SpState, StrategyError};

use crate::error::ServiceError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Active,
    FpWin,
    SpWin,
    Aborted,
}

/// Computes monitor verdicts for a finished session's transcript.
pub type MonitorFn = dyn Fn(&Transcript, &[GameState]) -> Vec<MonitorVerdict> + Send + Sync;

pub struct Config {
    pub capacity: usize,
    /// Plies after which a session stops as a draw at the horizon.
    pub horizon: usize,
    /// Directory for append-only transcripts, one file per session.
    pub transcripts: Option<PathBuf>,
    pub monitors: Option<Arc<MonitorFn>>,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            capacity: 1024,
            horizon: 1000,
            transcripts: None,
            monitors: None,
        }
    }
}

struct Session {
    id: String,
    created_at: u64,
    status: Status,
    states: Vec<GameState>,
    sp: SpState,
    transcript: Transcript,
    refutation_candidate: bool,
    failure: Option<String>,
    file: Option<File>,
}

/// Everything a client may see about a session.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionView {
    pub schema_version: u32,
    pub id: String,
    /// Milliseconds since the Unix epoch.
    pub created_at: u64,
    pub status: Status,
    pub target: TargetDescriptor,
    pub to_move: Player,
    pub ply: usize,
    pub fp_edges: Vec<Edge>,
    pub sp_edges: Vec<Edge>,
    pub history: Vec<MoveRecord>,
    pub stage: String,
    /// SP's Stage I copy of `H - z`, once it is complete.
    pub sp_copy: Option<SpCopy>,
    pub refutation_candidate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MoveReply {
    pub schema_version: u32,
    pub fp_move: MoveRecord,
    pub sp_move: Option<MoveRecord>,
    pub status: Status,
    pub stage: String,
    pub refutation_candidate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl MoveReply {
    pub fn sp_edge(&self) -> Option<&Edge> {
        self.sp_move.as_ref().map(|m| &m.edge)
    }

    pub fn fp_annotations(&self) -> &Annotations {
        &self.fp_move.annotations
    }
}

/// The in-memory session store. Distinct sessions are independent; each
/// session has a single writer at a time.
pub struct Service {
    config: Config,
    target: Arc<Target>,
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    next_id: Mutex<u64>,
}

impl Service {
    pub fn new(config: Config) -> Service {
        Service {
            config,
            target: Arc::new(Target::h5()),
            sessions: RwLock::new(HashMap::new()),
            next_id: Mutex::new(1),
        }
    }

    /// `create_session`
    pub fn create(&self) -> Result<SessionView, ServiceError> {
        let mut sessions = self.sessions.write().expect("lock");
        if sessions.len() >= self.config.capacity {
            return Err(ServiceError::CapacityExceeded(self.config.capacity));
        }
        let id = {
            let mut n = self.next_id.lock().expect("lock");
            let id = format!("s{:06}", *n);
            *n += 1;
            id
        };
        let header = Header::new(
            &self.target,
            "human",
            0,
            self.config.horizon,
            SpDriver::Strategy,
        );
        let transcript = Transcript::new(header);
        let file = match &self.config.transcripts {
            Some(dir) => {
                let mut f = OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(dir.join(format!("{id}.jsonl")))?;
                f.write_all(transcript.to_jsonl().as_bytes())?;
                Some(f)
            }
            None => None,
        };
        let session = Session {
            id: id.clone(),
            created_at: now_ms(),
            status: Status::Active,
            states: vec![GameState::new(self.target.clone())],
            sp: SpState::new(self.target.clone()).map_err(ServiceError::Strategy)?,
            transcript,
            refutation_candidate: false,
            failure: None,
            file,
        };
        let view = session.view();
        sessions.insert(id, Arc::new(Mutex::new(session)));
        Ok(view)
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ServiceError> {
        self.sessions
            .read()
            .expect("lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::SessionNotFound(id.to_string()))
    }

    /// `get_state`
    pub fn get(&self, id: &str) -> Result<SessionView, ServiceError> {
        let s = self.session(id)?;
        let view = s.lock().expect("lock").view();
        Ok(view)
    }

    /// `submit_fp_move`: FP claims `ids`, SP answers with the strategy.
    pub fn submit(&self, id: &str, ids: &[i64]) -> Result<MoveReply, ServiceError> {
        let s = self.session(id)?;
        let mut s = s.lock().expect("lock");
        s.submit(&self.target, ids, &self.config)
    }

    /// The session's transcript so far, as JSON lines.
    pub fn transcript(&self, id: &str) -> Result<String, ServiceError> {
        let s = self.session(id)?;
        let text = s.lock().expect("lock").transcript.to_jsonl();
        Ok(text)
    }
}

fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

fn parse_edge(ids: &[i64], k: usize) -> Result<Edge, ServiceError> {
    let bad = |msg: String| ServiceError::MalformedEdge(msg);
    if ids.len() != k {
        return Err(bad(format!("expected {k} vertex ids, got {}", ids.len())));
    }
    let vs = ids
        .iter()
        .map(|&v| Vertex::try_from(v).map_err(|_| bad(format!("vertex id {v} out of range"))))
        .collect::<Result<Vec<_>, _>>()?;
    Edge::new(&vs, k).map_err(|e| bad(e.to_string()))
}

impl Session {
    fn last(&self) -> &GameState {
        self.states.last().expect("at least the empty board")
    }

    fn record(&mut self, player: Player, edge: Edge, annotations: Annotations) -> MoveRecord {
        let m = MoveRecord {
            move_index: self.transcript.moves.len(),
            player,
            edge,
            annotations,
        };
        self.transcript.moves.push(m.clone());
        self.append(&m);
        m
    }

    fn append<T: Serialize>(&mut self, line: &T) {
        if let Some(f) = &mut self.file {
            let mut text = serde_json::to_string(line).expect("serializes");
            text.push('\n');
            // persistence is best effort; the in-memory session stays authoritative
            let _ = f.write_all(text.as_bytes());
        }
    }

    fn finish(&mut self, status: Status, outcome: Outcome, config: &Config) {
        self.status = status;
        let monitors = match &config.monitors {
            Some(f) => f(&self.transcript, &self.states),
            None => Vec::new(),
        };
        let footer = Footer {
            outcome,
            monitors,
            failure: self.failure.clone(),
        };
        self.append(&footer);
        self.transcript.footer = Some(footer);
    }

    fn submit(
        &mut self,
        target: &Arc<Target>,
        ids: &[i64],
        config: &Config,
    ) -> Result<MoveReply, ServiceError> {
        if self.status != Status::Active {
            return Err(ServiceError::NotActive(self.id.clone(), self.status));
        }
        let edge = parse_edge(ids, target.k())?;
        let after = self
            .last()
            .claim(Player::First, edge.clone())
            .map_err(ServiceError::Game)?;
        let fp_move = self.record(Player::First, edge.clone(), annotate(&after, Player::First));
        self.states.push(after);

        if has_win_through(self.last(), Player::First, &edge).is_some() {
            self.refutation_candidate = true;
            self.finish(Status::FpWin, Outcome::FpWin, config);
            return Ok(self.reply(fp_move, None));
        }
        if self.last().ply() >= config.horizon {
            self.finish(Status::Aborted, Outcome::OngoingAtHorizon, config);
            return Ok(self.reply(fp_move, None));
        }

        let reply = match sp_move(self.last(), &self.sp) {
            Ok(r) => r,
            Err(e) => {
                self.refutation_candidate = matches!(e, StrategyError::TheoremViolation { .. });
                self.failure = Some(e.to_string());
                self.finish(Status::Aborted, Outcome::Aborted, config);
                return Ok(self.reply(fp_move, None));
            }
        };
        let after = self
            .last()
            .claim(Player::Second, reply.edge.clone())
            .map_err(ServiceError::Game)?;
        let mut annotations = annotate(&after, Player::Second);
        annotations.stage = Some(reply.label());
        let sp_edge = reply.edge.clone();
        self.sp = reply.state;
        let sp_record = self.record(Player::Second, sp_edge.clone(), annotations);
        self.states.push(after);

        if has_win_through(self.last(), Player::Second, &sp_edge).is_some() {
            self.finish(Status::SpWin, Outcome::SpWin, config);
        } else if self.last().ply() >= config.horizon {
            self.finish(Status::Aborted, Outcome::OngoingAtHorizon, config);
        }
        Ok(self.reply(fp_move, Some(sp_record)))
    }

    fn reply(&self, fp_move: MoveRecord, sp_move: Option<MoveRecord>) -> MoveReply {
        MoveReply {
            schema_version: SCHEMA_VERSION,
            fp_move,
            sp_move,
            status: self.status,
            stage: self.sp.stage().to_string(),
            refutation_candidate: self.refutation_candidate,
            failure: self.failure.clone(),
        }
    }

    fn view(&self) -> SessionView {
        let s = self.last();
        SessionView {
            schema_version: SCHEMA_VERSION,
            id: self.id.clone(),
            created_at: self.created_at,
            status: self.status,
            target: s.target().descriptor(),
            to_move: s.to_move(),
            ply: s.ply(),
            fp_edges: s.edges(Player::First).to_vec(),
            sp_edges: s.edges(Player::Second).to_vec(),
            history: self.transcript.moves.clone(),
            stage: self.sp.stage().to_string(),
            sp_copy: self.sp.copy().cloned(),
            refutation_candidate: self.refutation_candidate,
            failure: self.failure.clone(),
        }
    }
}
