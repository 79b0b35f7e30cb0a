//! The second player's drawing strategy.
//!
//! Stage I builds a copy `F2` of `H - z` on fresh vertices. Afterwards every
//! move first checks for FP threats (Stage II) and otherwise attacks with a
//! pendant pair `r'`, `g'` through a fresh vertex (Stage III). One addition
//! to the three stages: when SP holds a threat of its own, it completes it.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use engine::{has_win, would_threaten, GameError, GameState, Player, SpDriver, Target};
use hypercore::{make_edge, Edge, Vertex, VertexMap};
use serde::{Deserialize, Serialize};

use crate::builder::{BuilderStrategy, Lemma41Builder};
use crate::error::StrategyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stage {
    BuildI,
    DefendII,
    AttackIII,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::BuildI => "I",
            Stage::DefendII => "II",
            Stage::AttackIII => "III",
        })
    }
}

/// SP's Stage I copy of `H - z` with its labelling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpCopy {
    pub edges: Vec<Edge>,
    /// Target vertex -> board vertex.
    pub labeling: VertexMap,
}

/// The last Stage III computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendingPair {
    pub z: Vertex,
    pub r: Edge,
    pub g: Edge,
    pub claimed: Edge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveReason {
    Build {
        step: usize,
    },
    /// Completes SP's own threat.
    Win,
    Block,
    /// `lookahead`: FP would have threatened by answering `r'` with `g'`.
    Attack {
        lookahead: bool,
    },
}

#[derive(Clone, Debug)]
pub struct SpState {
    target: Arc<Target>,
    stage: Stage,
    builder: Lemma41Builder,
    copy: Option<SpCopy>,
    pending: Option<PendingPair>,
}

#[derive(Clone, Debug)]
pub struct SpReply {
    pub edge: Edge,
    pub stage: Stage,
    pub reason: MoveReason,
    pub state: SpState,
}

impl SpReply {
    /// Short label written into transcripts.
    pub fn label(&self) -> String {
        match &self.reason {
            MoveReason::Build { step } => format!("I:build:{step}"),
            MoveReason::Win => format!("{}:win", self.stage),
            MoveReason::Block => "II:block".to_string(),
            MoveReason::Attack { lookahead: false } => "III:attack:r".to_string(),
            MoveReason::Attack { lookahead: true } => "III:attack:g".to_string(),
        }
    }
}

impl SpState {
    /// Checks that the strategy applies to `target`: Stage I must take
    /// exactly `m - 2` moves and the builder must build `H - z`.
    pub fn new(target: Arc<Target>) -> Result<SpState, StrategyError> {
        let builder = Lemma41Builder::new();
        if target.m() < 2 || builder.target().edge_count() != target.m() - 2 {
            return Err(StrategyError::Precondition(format!(
                "Stage I takes m - 2 = {} moves but the builder makes {}",
                target.m().saturating_sub(2),
                builder.target().edge_count()
            )));
        }
        Lemma41Builder::check_target(target.minus_z())?;
        Ok(SpState {
            target,
            stage: Stage::BuildI,
            builder,
            copy: None,
            pending: None,
        })
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn copy(&self) -> Option<&SpCopy> {
        self.copy.as_ref()
    }

    pub fn pending(&self) -> Option<&PendingPair> {
        self.pending.as_ref()
    }

    pub fn builder(&self) -> &Lemma41Builder {
        &self.builder
    }

    /// Rebuilds the strategy state by replaying SP's decisions along
    /// `state`'s history. Fails if some SP move differs from the strategy.
    pub fn replay(state: &GameState) -> Result<SpState, StrategyError> {
        let mut sp = SpState::new(state.target().clone())?;
        let mut s = GameState::new(state.target().clone());
        for (p, e) in state.history() {
            if *p == Player::Second {
                let reply = sp_move(&s, &sp)?;
                if reply.edge != *e {
                    return Err(StrategyError::Precondition(format!(
                        "SP move {e} at ply {} is not the strategy's {}",
                        s.ply(),
                        reply.edge
                    )));
                }
                sp = reply.state;
            }
            s = s.claim(*p, e.clone())?;
        }
        Ok(sp)
    }
}

/// `sp_move`: SP's reply in `state` given the strategy state so far.
pub fn sp_move(state: &GameState, sp: &SpState) -> Result<SpReply, StrategyError> {
    if state.to_move() != Player::Second {
        return Err(StrategyError::NotSpTurn(state.to_move()));
    }
    let mut next = sp.clone();

    if !sp.builder.is_complete() {
        let (edge, builder) = sp.builder.next_move(state)?;
        let step = builder.moves_made();
        next.builder = builder;
        if next.builder.is_complete() {
            next.copy = Some(finish_stage_one(state, &next.builder)?);
        }
        next.stage = Stage::BuildI;
        return Ok(SpReply {
            edge,
            stage: Stage::BuildI,
            reason: MoveReason::Build { step },
            state: next,
        });
    }
    let copy = sp.copy.as_ref().expect("copy recorded when Stage I ended");

    let own = state.threats(Player::Second);
    if let Some(t) = own
        .iter()
        .min_by(|a, b| a.completing_edge.cmp(&b.completing_edge))
    {
        let edge = t.completing_edge.clone();
        next.pending = None;
        return Ok(SpReply {
            edge,
            stage: sp.stage,
            reason: MoveReason::Win,
            state: next,
        });
    }

    let fp = state.threats(Player::First);
    if !fp.is_empty() {
        let completing: BTreeSet<&Edge> = fp.iter().map(|t| &t.completing_edge).collect();
        if completing.len() > 1 {
            let list: Vec<String> = completing.iter().map(|e| e.to_string()).collect();
            return Err(StrategyError::TheoremViolation {
                ply: state.ply(),
                detail: format!(
                    "FP has {} distinct free completing edges: {}",
                    completing.len(),
                    list.join(" ")
                ),
            });
        }
        let edge = (*completing.iter().next().expect("non-empty")).clone();
        next.stage = Stage::DefendII;
        next.pending = None;
        return Ok(SpReply {
            edge,
            stage: Stage::DefendII,
            reason: MoveReason::Block,
            state: next,
        });
    }

    let (z, r, g) = stage_three_pair(state, &sp.target, copy);
    let after_r = state.with_edge(Player::Second, r.clone())?;
    let lookahead = would_threaten(&after_r, Player::First, &g)?;
    let edge = if lookahead { g.clone() } else { r.clone() };
    next.stage = Stage::AttackIII;
    next.pending = Some(PendingPair {
        z,
        r,
        g,
        claimed: edge.clone(),
    });
    Ok(SpReply {
        edge,
        stage: Stage::AttackIII,
        reason: MoveReason::Attack { lookahead },
        state: next,
    })
}

fn finish_stage_one(state: &GameState, builder: &Lemma41Builder) -> Result<SpCopy, StrategyError> {
    let target = state.target();
    let edges = builder.built().to_vec();
    let labelings = target.minus_z_labelings(&edges);
    if labelings.len() != 1 {
        return Err(StrategyError::TheoremViolation {
            ply: state.ply(),
            detail: format!(
                "Stage I copy has {} labellings as H - z, expected exactly one",
                labelings.len()
            ),
        });
    }
    if let Some(e1) = state.first_fp_edge() {
        let touched: BTreeSet<Vertex> = edges.iter().flat_map(|e| e.vertices().to_vec()).collect();
        if let Some(v) = e1.vertices().iter().find(|v| touched.contains(v)) {
            return Err(StrategyError::Precondition(format!(
                "Stage I copy meets e_1 at vertex {v}"
            )));
        }
    }
    Ok(SpCopy {
        edges,
        labeling: labelings.into_iter().next().expect("one labelling"),
    })
}

/// The pair `r'`, `g'` through the lowest fresh vertex `z'`.
fn stage_three_pair(state: &GameState, target: &Target, copy: &SpCopy) -> (Vertex, Edge, Edge) {
    let z_new = state.fresh_vertices(1)[0];
    let lift = |e: &Edge| {
        let ids: Vec<Vertex> = e
            .vertices()
            .iter()
            .map(|&v| {
                if v == target.z() {
                    z_new
                } else {
                    copy.labeling.get(v).expect("labelling covers H - z")
                }
            })
            .collect();
        make_edge(&ids, target.k()).expect("distinct ids")
    };
    (z_new, lift(target.r()), lift(target.g()))
}

/// Who plays SP in a game.
pub trait SecondPlayer: Send {
    fn reply(&mut self, state: &GameState) -> Result<(Edge, String), StrategyError>;
    fn driver(&self) -> SpDriver;
    fn stage(&self) -> Option<Stage> {
        None
    }
}

/// SP following the drawing strategy.
#[derive(Clone, Debug)]
pub struct DrawingStrategy {
    state: SpState,
}

impl DrawingStrategy {
    pub fn new(target: Arc<Target>) -> Result<DrawingStrategy, StrategyError> {
        Ok(DrawingStrategy {
            state: SpState::new(target)?,
        })
    }

    pub fn state(&self) -> &SpState {
        &self.state
    }
}

impl SecondPlayer for DrawingStrategy {
    fn reply(&mut self, state: &GameState) -> Result<(Edge, String), StrategyError> {
        let r = sp_move(state, &self.state)?;
        let label = r.label();
        self.state = r.state;
        Ok((r.edge, label))
    }

    fn driver(&self) -> SpDriver {
        SpDriver::Strategy
    }

    fn stage(&self) -> Option<Stage> {
        Some(self.state.stage)
    }
}

/// A stub SP that ignores the game and claims edges on fresh vertices.
#[derive(Clone, Debug, Default)]
pub struct IdleSp;

impl SecondPlayer for IdleSp {
    fn reply(&mut self, state: &GameState) -> Result<(Edge, String), StrategyError> {
        let ids = state.fresh_vertices(state.target().k());
        let edge = make_edge(&ids, state.target().k()).map_err(GameError::from)?;
        Ok((edge, "idle".to_string()))
    }

    fn driver(&self) -> SpDriver {
        SpDriver::Manual
    }
}

/// True once either player owns a copy of the target.
pub fn winner(state: &GameState) -> Option<Player> {
    [Player::First, Player::Second]
        .into_iter()
        .find(|&p| has_win(state, p).is_some())
}
