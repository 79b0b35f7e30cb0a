//! Threats, open and closed copies, and win detection.
//!
//! A copy of `H - e` inside a player's graph, together with the edge `e'`
//! that would complete it to `H`, is open when `e'` is free; an open copy's
//! `e'` is a threat. Because every vertex of the target has degree at least
//! two, an embedding of `H - e` already fixes the image of `e`, so `e'` is
//! derived and never searched for.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;

use hypercore::{Edge, Host, Restriction, VertexMap};
use serde::{Deserialize, Serialize};

use crate::error::GameError;
use crate::state::{GameState, Player};
use crate::target::Target;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ThreatKind {
    Standard,
    Special,
}

impl fmt::Display for ThreatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThreatKind::Standard => "standard",
            ThreatKind::Special => "special",
        })
    }
}

/// An embedded copy of `H` minus one edge in one player's graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyStatus {
    pub owner: Player,
    /// Target vertex -> board vertex.
    pub copy: VertexMap,
    /// The edge of `H` left out.
    pub template_edge: Edge,
    /// Image of `template_edge`.
    pub completing_edge: Edge,
    /// Board edges of the copy, sorted.
    pub image: Vec<Edge>,
    pub kind: ThreatKind,
    pub open: bool,
}

/// An open copy whose completing edge is free.
pub type Threat = CopyStatus;

/// `find_threats`
pub fn find_threats(state: &GameState, player: Player) -> Vec<Threat> {
    state.threats(player).as_ref().clone()
}

pub(crate) fn search_threats(state: &GameState, player: Player) -> Vec<Threat> {
    copies(state, player, None)
        .into_iter()
        .filter(|c| c.open)
        .collect()
}

/// Every copy of `H - e` (any `e`) in `player`'s graph, open or closed.
/// Copies whose completing edge belongs to `player` are full copies of `H`
/// and are reported as closed.
pub fn copy_statuses(state: &GameState, player: Player) -> Vec<CopyStatus> {
    copies(state, player, None)
}

/// Copies whose image contains `through`.
pub fn copy_statuses_through(state: &GameState, player: Player, through: &Edge) -> Vec<CopyStatus> {
    copies(state, player, Some(through))
}

fn copies(state: &GameState, player: Player, through: Option<&Edge>) -> Vec<CopyStatus> {
    let target = state.target();
    let edges = state.edges(player);
    if edges.len() + 1 < target.m() {
        return Vec::new();
    }
    let local;
    let host_edges: &[Edge] = match through {
        Some(anchor) => {
            local = near(edges, anchor, target.anchor_radius());
            &local
        }
        None => edges,
    };
    let host = Host::from_edges(target.k(), host_edges.iter());
    let mut found: BTreeMap<(Edge, Vec<Edge>), CopyStatus> = BTreeMap::new();
    for t in target.templates() {
        let mut record = |m: &VertexMap| {
            let completing = m
                .apply_edge(&t.removed)
                .expect("template keeps every target vertex");
            let mut image: Vec<Edge> = t
                .graph
                .edges()
                .iter()
                .map(|e| m.apply_edge(e).expect("total map"))
                .collect();
            image.sort();
            let key = (completing.clone(), image);
            // Under a target automorphism the same board copy arises from
            // several (template, labelling) pairs; keep the least one so the
            // result does not depend on search order.
            let better = match found.get(&key) {
                None => true,
                Some(old) => (t.kind, &t.removed, m) < (old.kind, &old.template_edge, &old.copy),
            };
            if better {
                let open = state.is_free(&completing);
                found.insert(
                    key.clone(),
                    CopyStatus {
                        owner: player,
                        copy: m.clone(),
                        template_edge: t.removed.clone(),
                        completing_edge: completing,
                        image: key.1,
                        kind: t.kind,
                        open,
                    },
                );
            }
            ControlFlow::Continue(())
        };
        match through {
            Some(anchor) => t.pattern.search_through(&host, anchor, &mut record),
            None => t.pattern.search(&host, &Restriction::new(), &mut record),
        }
    }
    found.into_values().collect()
}

/// Edges of `edges` within `radius` intersection steps of `anchor`
/// (all of them when `radius` is `None`).
fn near(edges: &[Edge], anchor: &Edge, radius: Option<usize>) -> Vec<Edge> {
    let Some(radius) = radius else {
        return edges.to_vec();
    };
    let mut inside = vec![false; edges.len()];
    let mut frontier = vec![anchor.clone()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for (i, e) in edges.iter().enumerate() {
            if !inside[i] && frontier.iter().any(|f| f.intersection_size(e) > 0) {
                inside[i] = true;
                next.push(e.clone());
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    edges
        .iter()
        .zip(inside)
        .filter(|(e, keep)| *keep || *e == anchor)
        .map(|(e, _)| e.clone())
        .collect()
}

/// Threats of `player` in `state`, given its threats one move earlier and
/// that the move was `last` by `mover`.
pub(crate) fn carry_threats(
    state: &GameState,
    player: Player,
    before: &[Threat],
    mover: Player,
    last: &Edge,
) -> Vec<Threat> {
    let mut out: Vec<Threat> = before
        .iter()
        .filter(|t| t.completing_edge != *last)
        .cloned()
        .collect();
    if player == mover {
        out.extend(
            copies(state, player, Some(last))
                .into_iter()
                .filter(|c| c.open),
        );
        out.sort_by(|a, b| (&a.completing_edge, &a.image).cmp(&(&b.completing_edge, &b.image)));
    }
    out
}

/// `classify`
pub fn classify(target: &Target, threat: &Threat) -> ThreatKind {
    target.classify(&threat.template_edge)
}

/// `has_win`: an embedding of the whole target into `player`'s graph.
pub fn has_win(state: &GameState, player: Player) -> Option<VertexMap> {
    let target = state.target();
    let edges = state.edges(player);
    if edges.len() < target.m() {
        return None;
    }
    target
        .full_pattern()
        .first(&Host::from_edges(target.k(), edges.iter()))
}

/// A copy of the target in `player`'s graph that uses `edge`.
pub fn has_win_through(state: &GameState, player: Player, edge: &Edge) -> Option<VertexMap> {
    let target = state.target();
    let edges = state.edges(player);
    if edges.len() < target.m() {
        return None;
    }
    let local = near(edges, edge, target.anchor_radius());
    let mut out = None;
    target
        .full_pattern()
        .search_through(&Host::from_edges(target.k(), local.iter()), edge, |m| {
            out = Some(m.clone());
            ControlFlow::Break(())
        });
    out
}

/// `would_threaten`: does `player` have a threat after also owning `edge`?
pub fn would_threaten(state: &GameState, player: Player, edge: &Edge) -> Result<bool, GameError> {
    if !state.is_free(edge) {
        return Err(GameError::EdgeTaken(edge.clone()));
    }
    // warm the cache so the hypothetical position is searched incrementally
    state.threats(player);
    let next = state.with_edge(player, edge.clone())?;
    Ok(!next.threats(player).is_empty())
}

/// Distinct copies of `H - z` in `player`'s graph, as sorted image edge sets.
pub fn minus_z_copies(state: &GameState, player: Player) -> Vec<(Vec<Edge>, VertexMap)> {
    let target = state.target();
    let edges = state.edges(player);
    let mut out: BTreeMap<Vec<Edge>, VertexMap> = BTreeMap::new();
    if edges.len() < target.minus_z().edge_count() {
        return Vec::new();
    }
    target.minus_z_pattern().search(
        &Host::from_edges(target.k(), edges.iter()),
        &Restriction::new(),
        |m| {
            let mut image: Vec<Edge> = target
                .minus_z()
                .edges()
                .iter()
                .map(|e| m.apply_edge(e).expect("total map"))
                .collect();
            image.sort();
            out.entry(image).or_insert_with(|| m.clone());
            ControlFlow::Continue(())
        },
    );
    out.into_iter().collect()
}

/// Copies of `H - z` in `player`'s graph whose image contains `edge`, as
/// sorted image edge sets.
pub fn minus_z_copies_through(state: &GameState, player: Player, edge: &Edge) -> Vec<Vec<Edge>> {
    let target = state.target();
    let edges = state.edges(player);
    let mut out: BTreeMap<Vec<Edge>, ()> = BTreeMap::new();
    if edges.len() < target.minus_z().edge_count() {
        return Vec::new();
    }
    target.minus_z_pattern().search_through(
        &Host::from_edges(target.k(), edges.iter()),
        edge,
        |m| {
            let mut image: Vec<Edge> = target
                .minus_z()
                .edges()
                .iter()
                .map(|e| m.apply_edge(e).expect("total map"))
                .collect();
            image.sort();
            out.insert(image, ());
            ControlFlow::Continue(())
        },
    );
    out.into_keys().collect()
}
