//! Fast builders: strategies that complete a fixed graph in exactly as many
//! own moves as it has edges.

use std::fmt;

use engine::{GameState, Player};
use hypercore::{canonical_h5, is_isomorphic, make_edge, Edge, Hypergraph, Vertex};
use serde::{Deserialize, Serialize};

use crate::error::StrategyError;

pub trait BuilderStrategy: Clone + fmt::Debug {
    /// The graph being built, up to isomorphism.
    fn target(&self) -> &Hypergraph;

    /// Edges claimed so far, in order.
    fn built(&self) -> &[Edge];

    /// Returns the next edge and the builder state after claiming it.
    fn next_move(&self, state: &GameState) -> Result<(Edge, Self), StrategyError>;

    fn moves_made(&self) -> usize {
        self.built().len()
    }

    fn is_complete(&self) -> bool {
        self.moves_made() == self.target().edge_count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BuildBranch {
    /// Move 6 answered one of the three listed opponent edges.
    II,
    /// Move 6 saw any other opponent edge.
    III,
}

/// The seven-move builder of `H5 - z`.
///
/// Moves 1 to 5 lay a tight path `v1 .. v9` on vertices that are fresh at
/// claim time; moves 6 and 7 read only the opponent's 6th and 7th edges.
#[derive(Clone, Debug)]
pub struct Lemma41Builder {
    target: Hypergraph,
    me: Player,
    /// `labels[i]` is the board vertex playing `v_i`; index 0 is unused.
    labels: [Option<Vertex>; 10],
    built: Vec<Edge>,
    branch: Option<BuildBranch>,
}

const STAGE_II_TRIGGERS: [[usize; 5]; 3] = [[1, 2, 3, 4, 9], [1, 4, 6, 8, 9], [1, 3, 5, 8, 9]];

impl Lemma41Builder {
    /// Builder for the second player.
    pub fn new() -> Lemma41Builder {
        Lemma41Builder::for_player(Player::Second)
    }

    pub fn for_player(me: Player) -> Lemma41Builder {
        let d = canonical_h5();
        Lemma41Builder {
            target: d.graph.remove_vertex(d.z).expect("z is a vertex"),
            me,
            labels: [None; 10],
            built: Vec::new(),
            branch: None,
        }
    }

    pub fn branch(&self) -> Option<BuildBranch> {
        self.branch
    }

    /// Board vertex for `v_i`, once chosen.
    pub fn label(&self, i: usize) -> Option<Vertex> {
        self.labels.get(i).copied().flatten()
    }

    /// Fails unless `graph` is isomorphic to `H5 - z`.
    pub fn check_target(graph: &Hypergraph) -> Result<(), StrategyError> {
        let ours = Lemma41Builder::new();
        if is_isomorphic(graph, &ours.target).is_some() {
            Ok(())
        } else {
            Err(StrategyError::Precondition(
                "the seven-move builder only builds H5 minus z".into(),
            ))
        }
    }

    fn edge_of(&self, ids: [usize; 5]) -> Edge {
        let vs: Vec<Vertex> = ids
            .iter()
            .map(|&i| self.labels[i].expect("label assigned before use"))
            .collect();
        make_edge(&vs, 5).expect("labels are distinct")
    }

    fn opponent_move(&self, state: &GameState, step: usize) -> Result<Edge, StrategyError> {
        state
            .edges(self.me.other())
            .get(step - 1)
            .cloned()
            .ok_or(StrategyError::OpponentMoveMissing { step, needed: step })
    }
}

impl Default for Lemma41Builder {
    fn default() -> Self {
        Lemma41Builder::new()
    }
}

impl BuilderStrategy for Lemma41Builder {
    fn target(&self) -> &Hypergraph {
        &self.target
    }

    fn built(&self) -> &[Edge] {
        &self.built
    }

    fn next_move(&self, state: &GameState) -> Result<(Edge, Self), StrategyError> {
        let step = self.built.len() + 1;
        let mut next = self.clone();
        let mut fresh: Vec<Vertex> = Vec::new();
        let edge = match step {
            1 => {
                fresh = state.fresh_vertices(5);
                for (i, &v) in fresh.iter().enumerate() {
                    next.labels[i + 1] = Some(v);
                }
                next.edge_of([1, 2, 3, 4, 5])
            }
            2..=5 => {
                fresh = state.fresh_vertices(1);
                next.labels[step + 4] = Some(fresh[0]);
                next.edge_of([step, step + 1, step + 2, step + 3, step + 4])
            }
            6 => {
                let theirs = self.opponent_move(state, 6)?;
                if STAGE_II_TRIGGERS.iter().any(|&t| self.edge_of(t) == theirs) {
                    next.branch = Some(BuildBranch::II);
                    self.edge_of([1, 6, 7, 8, 9])
                } else {
                    next.branch = Some(BuildBranch::III);
                    self.edge_of([1, 2, 3, 4, 9])
                }
            }
            7 => {
                let theirs = self.opponent_move(state, 7)?;
                match self.branch.expect("branch chosen on move 6") {
                    BuildBranch::II => {
                        if theirs == self.edge_of([1, 2, 4, 6, 9]) {
                            self.edge_of([1, 2, 5, 7, 9])
                        } else {
                            self.edge_of([1, 2, 4, 6, 9])
                        }
                    }
                    BuildBranch::III => {
                        if theirs == self.edge_of([1, 4, 6, 8, 9]) {
                            self.edge_of([1, 3, 5, 8, 9])
                        } else {
                            self.edge_of([1, 4, 6, 8, 9])
                        }
                    }
                }
            }
            _ => return Err(StrategyError::BuilderFinished(self.built.len())),
        };
        if !fresh.is_empty() {
            let in_play = state.vertices_in_play();
            if let Some(&vertex) = fresh.iter().find(|v| in_play.contains(v)) {
                return Err(StrategyError::NotFresh { step, vertex });
            }
        }
        if !state.is_free(&edge) {
            return Err(StrategyError::BuilderStuck { step, edge });
        }
        next.built.push(edge.clone());
        Ok((edge, next))
    }
}
