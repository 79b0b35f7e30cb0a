//! Property (iii) checked constructively for the seven-move builder.
//!
//! The builder's first five moves sit on vertices fresh at claim time, so
//! FP's first five moves are one class, played as fresh edges. Its 6th and
//! 7th moves are drawn from the named edges the builder reacts to or may
//! claim, plus two representatives of "anything else": a fresh edge and a
//! stray edge on the builder's vertices. Both representatives must lead to
//! the same build; that is asserted, not assumed.

use std::collections::BTreeMap;
use std::sync::Arc;

use engine::{GameState, Player, Target};
use hypercore::{is_isomorphic, make_edge, Edge, Hypergraph, Vertex};
use serde::{Deserialize, Serialize};
use strategies::{make_adversary, BuilderStrategy, Lemma41Builder, ADVERSARIES};

use crate::report::{Check, PropertyReport, Witness};

/// One FP move, in terms of the builder's labels `v_1..v_9`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FpChoice {
    Fresh,
    /// `{v2, v3, v5, v6, v8}`: on the builder's vertices but never built.
    Stray,
    Named([usize; 5]),
}

const STRAY: [usize; 5] = [2, 3, 5, 6, 8];

/// Edges the builder tests for or may claim on moves 6 and 7.
pub const NAMED: [[usize; 5]; 6] = [
    [1, 2, 3, 4, 9],
    [1, 4, 6, 8, 9],
    [1, 3, 5, 8, 9],
    [1, 6, 7, 8, 9],
    [1, 2, 4, 6, 9],
    [1, 2, 5, 7, 9],
];

/// FP's 6th and 7th moves; moves 1 to 5 are fresh.
pub fn lemma41_cover() -> Vec<[FpChoice; 2]> {
    let options: Vec<FpChoice> = NAMED
        .iter()
        .map(|&n| FpChoice::Named(n))
        .chain([FpChoice::Fresh, FpChoice::Stray])
        .collect();
    let mut lines = Vec::new();
    for &a in &options {
        for &b in &options {
            if a != b || a == FpChoice::Fresh {
                lines.push([a, b]);
            }
        }
    }
    lines
}

/// Result of one line of play against the builder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverLeaf {
    pub line: String,
    /// FP's 6th or 7th choice was already taken, so the line is not a game.
    pub skipped: bool,
    pub sp_moves: usize,
    /// SP's edges in label terms.
    pub built: Vec<[usize; 5]>,
    pub isomorphic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn label_of(b: &Lemma41Builder, v: Vertex) -> usize {
    (1..=9)
        .find(|&i| b.label(i) == Some(v))
        .expect("builder edges use labelled vertices")
}

fn resolve(choice: FpChoice, state: &GameState, b: &Lemma41Builder) -> Edge {
    let k = state.target().k();
    let ids = match choice {
        FpChoice::Fresh => return make_edge(&state.fresh_vertices(k), k).expect("distinct"),
        FpChoice::Stray => STRAY,
        FpChoice::Named(n) => n,
    };
    let vs: Vec<Vertex> = ids
        .iter()
        .map(|&i| b.label(i).expect("labels fixed after five moves"))
        .collect();
    make_edge(&vs, k).expect("labels are distinct")
}

fn play_line(
    target: &Arc<Target>,
    builder: &Lemma41Builder,
    line: [FpChoice; 2],
    minus_z: &Hypergraph,
) -> CoverLeaf {
    let mut leaf = CoverLeaf {
        line: format!("{:?} {:?}", line[0], line[1]),
        skipped: false,
        sp_moves: 0,
        built: Vec::new(),
        isomorphic: false,
        error: None,
    };
    let mut s = GameState::new(target.clone());
    let mut b = builder.clone();
    for step in 1..=minus_z.edge_count() {
        let fp = match step {
            6 | 7 => resolve(line[step - 6], &s, &b),
            _ => resolve(FpChoice::Fresh, &s, &b),
        };
        if !s.is_free(&fp) {
            leaf.skipped = true;
            return leaf;
        }
        s = s.claim(Player::First, fp).expect("free edge");
        match b.next_move(&s) {
            Ok((e, nb)) => {
                s = s
                    .claim(Player::Second, e)
                    .expect("builder checked the edge");
                b = nb;
                leaf.sp_moves += 1;
            }
            Err(err) => {
                leaf.error = Some(err.to_string());
                return leaf;
            }
        }
    }
    if let Ok((e, _)) = b.next_move(&s) {
        leaf.error = Some(format!("builder offered an extra move {e}"));
    }
    let built = Hypergraph::from_edges(target.k(), s.edges(Player::Second).iter().cloned())
        .expect("uniform edges");
    leaf.isomorphic = is_isomorphic(&built, minus_z).is_some();
    leaf.built = s
        .edges(Player::Second)
        .iter()
        .map(|e| {
            let mut ids = [0; 5];
            for (slot, &v) in ids.iter_mut().zip(e.vertices()) {
                *slot = label_of(&b, v);
            }
            ids.sort_unstable();
            ids
        })
        .collect();
    leaf
}

/// Builder games against every suite adversary for `seeds` seeds each.
pub fn play_suite(
    target: &Arc<Target>,
    builder: &Lemma41Builder,
    seeds: u64,
    minus_z: &Hypergraph,
) -> Vec<CoverLeaf> {
    let mut out = Vec::new();
    for name in ADVERSARIES {
        for seed in 0..seeds {
            let mut fp = make_adversary(name, target, seed).expect("suite name");
            let mut s = GameState::new(target.clone());
            let mut b = builder.clone();
            let mut leaf = CoverLeaf {
                line: format!("{name} seed {seed}"),
                skipped: false,
                sp_moves: 0,
                built: Vec::new(),
                isomorphic: false,
                error: None,
            };
            while !b.is_complete() {
                let e = fp.next_move(&s);
                s = s
                    .claim(Player::First, e)
                    .expect("adversaries play free edges");
                match b.next_move(&s) {
                    Ok((e, nb)) => {
                        s = s.claim(Player::Second, e).expect("free");
                        b = nb;
                        leaf.sp_moves += 1;
                    }
                    Err(err) => {
                        leaf.error = Some(err.to_string());
                        break;
                    }
                }
            }
            let built = Hypergraph::from_edges(target.k(), s.edges(Player::Second).iter().cloned())
                .expect("uniform edges");
            leaf.isomorphic = is_isomorphic(&built, minus_z).is_some();
            out.push(leaf);
        }
    }
    out
}

/// `check_property_iii_constructive` for the seven-move builder, over
/// [`lemma41_cover`] and the adversary suite.
pub fn check_property_iii_constructive(
    h: &Hypergraph,
    z: Vertex,
    builder: &Lemma41Builder,
) -> (PropertyReport, Vec<CoverLeaf>) {
    let mut leaves = Vec::new();
    let report = PropertyReport::timed(Check::III, || {
        let target = match Target::new(h.clone(), z) {
            Ok(t) => Arc::new(t),
            Err(e) => return (false, Some(Witness::new(format!("not a target: {e}")))),
        };
        let minus_z = target.minus_z().clone();
        if let Err(e) = Lemma41Builder::check_target(&minus_z) {
            let w = Witness::new(format!("no builder for H - z: {e}")).with_graph(&minus_z, None);
            return (false, Some(w));
        }
        let m = minus_z.edge_count();
        leaves = lemma41_cover()
            .into_iter()
            .map(|line| play_line(&target, builder, line, &minus_z))
            .collect();

        // The two "anything else" representatives must be indistinguishable.
        let by_line: BTreeMap<&str, &CoverLeaf> =
            leaves.iter().map(|l| (l.line.as_str(), l)).collect();
        for l in &leaves {
            if !l.line.contains("Stray") || l.skipped {
                continue;
            }
            let twin = l.line.replace("Stray", "Fresh");
            if let Some(t) = by_line.get(twin.as_str()) {
                if !t.skipped && t.built != l.built {
                    let w = Witness::new(format!(
                        "builder tells {} from {}: {:?} vs {:?}",
                        l.line, t.line, l.built, t.built
                    ));
                    return (false, Some(w));
                }
            }
        }
        leaves.extend(play_suite(&target, builder, 8, &minus_z));

        let bad = leaves
            .iter()
            .find(|l| !l.skipped && (l.error.is_some() || l.sp_moves != m || !l.isomorphic));
        let played = leaves.iter().filter(|l| !l.skipped).count();
        match bad {
            None => (
                true,
                Some(Witness::new(format!(
                    "{played} lines, each built H - z in {m} moves"
                ))),
            ),
            Some(l) => (
                false,
                Some(Witness::new(format!(
                    "line {}: {} SP moves, isomorphic {}, error {:?}",
                    l.line, l.sp_moves, l.isomorphic, l.error
                ))),
            ),
        }
    });
    (report, leaves)
}
