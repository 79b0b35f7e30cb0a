use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use hypercore::{Edge, Vertex};
use serde::{Deserialize, Serialize};

use crate::error::GameError;
use crate::target::Target;
use crate::threat::{self, Threat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Player {
    #[serde(rename = "FP")]
    First,
    #[serde(rename = "SP")]
    Second,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::First => Player::Second,
            Player::Second => Player::First,
        }
    }

    fn slot(self) -> usize {
        match self {
            Player::First => 0,
            Player::Second => 1,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::First => "FP",
            Player::Second => "SP",
        })
    }
}

/// Snapshot of a game on the infinite board.
///
/// Only claimed edges exist; any other k-set of naturals is free. A state
/// is never mutated after construction: [`GameState::claim`] returns a new
/// one. Threat lists are computed lazily and memoised per snapshot.
#[derive(Debug)]
pub struct GameState {
    target: Arc<Target>,
    owner: HashMap<Edge, Player>,
    claimed: [Vec<Edge>; 2],
    history: Vec<(Player, Edge)>,
    next_fresh: Vertex,
    threats: [OnceLock<Arc<Vec<Threat>>>; 2],
    /// Threat lists of the previous position, when they had been computed.
    inherited: [Option<Arc<Vec<Threat>>>; 2],
}

impl Clone for GameState {
    fn clone(&self) -> Self {
        GameState {
            target: self.target.clone(),
            owner: self.owner.clone(),
            claimed: self.claimed.clone(),
            history: self.history.clone(),
            next_fresh: self.next_fresh,
            threats: self.threats.clone(),
            inherited: self.inherited.clone(),
        }
    }
}

impl GameState {
    /// `new_game`: empty board, FP to move.
    pub fn new(target: Arc<Target>) -> GameState {
        GameState {
            target,
            owner: HashMap::new(),
            claimed: [Vec::new(), Vec::new()],
            history: Vec::new(),
            next_fresh: 0,
            threats: [OnceLock::new(), OnceLock::new()],
            inherited: [None, None],
        }
    }

    pub fn target(&self) -> &Arc<Target> {
        &self.target
    }

    pub fn to_move(&self) -> Player {
        if self.history.len().is_multiple_of(2) {
            Player::First
        } else {
            Player::Second
        }
    }

    /// `claim`: `player` takes a free edge on their turn.
    pub fn claim(&self, player: Player, edge: Edge) -> Result<GameState, GameError> {
        let expected = self.to_move();
        if player != expected {
            return Err(GameError::NotYourTurn { expected });
        }
        self.with_edge(player, edge)
    }

    /// Adds `edge` to `player` ignoring turn order. Used for hypothetical
    /// positions; never recorded as a real move by the harness.
    pub fn with_edge(&self, player: Player, edge: Edge) -> Result<GameState, GameError> {
        if edge.len() != self.target.k() {
            return Err(hypercore::HyperError::WrongArity {
                expected: self.target.k(),
                found: edge.len(),
            }
            .into());
        }
        if self.owner.contains_key(&edge) {
            return Err(GameError::EdgeTaken(edge));
        }
        let mut next = GameState {
            target: self.target.clone(),
            owner: self.owner.clone(),
            claimed: self.claimed.clone(),
            history: self.history.clone(),
            next_fresh: self.next_fresh,
            threats: [OnceLock::new(), OnceLock::new()],
            inherited: [
                self.threats[0].get().cloned(),
                self.threats[1].get().cloned(),
            ],
        };
        let top = edge.max_vertex().expect("k >= 2");
        next.next_fresh = next.next_fresh.max(top + 1);
        next.owner.insert(edge.clone(), player);
        next.claimed[player.slot()].push(edge.clone());
        next.history.push((player, edge));
        Ok(next)
    }

    pub fn is_free(&self, edge: &Edge) -> bool {
        !self.owner.contains_key(edge)
    }

    pub fn owner_of(&self, edge: &Edge) -> Option<Player> {
        self.owner.get(edge).copied()
    }

    /// Claimed edges of `player` in claim order.
    pub fn edges(&self, player: Player) -> &[Edge] {
        &self.claimed[player.slot()]
    }

    pub fn history(&self) -> &[(Player, Edge)] {
        &self.history
    }

    pub fn ply(&self) -> usize {
        self.history.len()
    }

    /// `e_1`, FP's first edge.
    pub fn first_fp_edge(&self) -> Option<&Edge> {
        self.history.first().map(|(_, e)| e)
    }

    /// One past the largest vertex id on the board.
    pub fn next_fresh_vertex(&self) -> Vertex {
        self.next_fresh
    }

    /// `fresh_vertices`: the lowest `count` naturals isolated in both graphs.
    pub fn fresh_vertices(&self, count: usize) -> Vec<Vertex> {
        (self.next_fresh..).take(count).collect()
    }

    pub fn vertices_in_play(&self) -> BTreeSet<Vertex> {
        self.owner
            .keys()
            .flat_map(|e| e.vertices().iter().copied())
            .collect()
    }

    pub fn degree(&self, player: Player, v: Vertex) -> usize {
        self.edges(player).iter().filter(|e| e.contains(v)).count()
    }

    /// Memoised `find_threats(self, player)`. Computed incrementally from
    /// the previous position's list when that one was already known.
    pub fn threats(&self, player: Player) -> Arc<Vec<Threat>> {
        self.threats[player.slot()]
            .get_or_init(|| {
                let list = match (&self.inherited[player.slot()], self.history.last()) {
                    (Some(before), Some((mover, last))) => {
                        threat::carry_threats(self, player, before, *mover, last)
                    }
                    _ => threat::search_threats(self, player),
                };
                Arc::new(list)
            })
            .clone()
    }

    /// Rebuilds a state by replaying `moves` from an empty board.
    pub fn replay<'a, I>(target: Arc<Target>, moves: I) -> Result<GameState, GameError>
    where
        I: IntoIterator<Item = &'a (Player, Edge)>,
    {
        let mut s = GameState::new(target);
        for (p, e) in moves {
            s = s.claim(*p, e.clone())?;
        }
        Ok(s)
    }
}

impl PartialEq for GameState {
    fn eq(&self, other: &Self) -> bool {
        self.history == other.history
            && self.next_fresh == other.next_fresh
            && self.target.graph() == other.target.graph()
            && self.target.z() == other.target.z()
    }
}
