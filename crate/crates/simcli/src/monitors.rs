//! Post hoc checks of a transcript against the inductive properties the
//! draw proof maintains after FP's `(m-1)`th move.
//!
//! Each monitor first asks whether its case applies, judged by FP's
//! `(m-1)`th move: no threat, a special threat or a standard threat. The
//! proofs assume SP does not win, so FP's move right before a winning SP
//! move is exempt: FP may ignore SP's threat there and lose at once.

use std::collections::{BTreeSet, HashMap};

use engine::{
    has_win_through, minus_z_copies_through, GameState, MonitorVerdict, Player, ThreatClass,
    Transcript,
};
use hypercore::{Edge, Vertex};

use crate::game::driver_is_strategy;

pub const LEMMA35: &str = "lemma35";
pub const LEMMA36: &str = "lemma36";
pub const LEMMA37: &str = "lemma37";
pub const UNIQUE_THREAT: &str = "uniqueThreat";
pub const MONITORS: [&str; 4] = [LEMMA35, LEMMA36, LEMMA37, UNIQUE_THREAT];

/// Every monitor, on the positions replayed from `t`.
pub fn evaluate(t: &Transcript) -> Result<Vec<MonitorVerdict>, engine::TranscriptError> {
    Ok(evaluate_states(t, &t.states()?))
}

/// Every monitor, given the positions after each move of `t` (starting
/// with the empty board). The verdicts depend only on the moves.
pub fn evaluate_states(t: &Transcript, states: &[GameState]) -> Vec<MonitorVerdict> {
    let mut line = Line::new(states);
    vec![
        monitor_lemma35(&mut line),
        monitor_lemma36(&mut line),
        monitor_lemma37(&mut line),
        monitor_unique_threat(&line, driver_is_strategy(t)),
    ]
}

/// Positions of one game with the facts the monitors share.
pub struct Line<'a> {
    states: &'a [GameState],
    /// Move index of FP's `(m-1)`th move.
    pivot: usize,
    /// FP move exempt because SP wins right after it.
    exempt: Option<usize>,
    /// Distinct `H - z` copies in FP's graph after each move, filled lazily.
    copies: Vec<BTreeSet<Vec<Edge>>>,
}

impl<'a> Line<'a> {
    pub fn new(states: &'a [GameState]) -> Line<'a> {
        let last = states.last().expect("at least the empty board");
        let m = last.target().m();
        let exempt = match last.history().last() {
            Some((Player::Second, e)) if has_win_through(last, Player::Second, e).is_some() => {
                Some(last.ply() - 2)
            }
            _ => None,
        };
        Line {
            states,
            pivot: 2 * (m - 2),
            exempt,
            copies: Vec::new(),
        }
    }

    fn moves(&self) -> usize {
        self.states.len() - 1
    }

    fn after(&self, index: usize) -> &GameState {
        &self.states[index + 1]
    }

    fn edge(&self, index: usize) -> &Edge {
        &self.after(index).history()[index].1
    }

    fn class(&self, index: usize) -> ThreatClass {
        ThreatClass::of(&self.after(index).threats(Player::First))
    }

    /// FP move indices from `from` on that the monitors check.
    fn fp_moves(&self, from: usize) -> impl Iterator<Item = usize> + '_ {
        (from..self.moves())
            .step_by(2)
            .filter(move |x| Some(*x) != self.exempt)
    }

    fn copies_after(&mut self, index: usize) -> &BTreeSet<Vec<Edge>> {
        while self.copies.len() <= index {
            let i = self.copies.len();
            let mut next = if i == 0 {
                BTreeSet::new()
            } else {
                self.copies[i - 1].clone()
            };
            let s = &self.states[i + 1];
            let (p, e) = &s.history()[i];
            if *p == Player::First {
                next.extend(minus_z_copies_through(s, Player::First, e));
            }
            self.copies.push(next);
        }
        &self.copies[index]
    }
}

fn not_applicable(name: &str, detail: String) -> MonitorVerdict {
    MonitorVerdict {
        monitor: name.to_string(),
        applicable: false,
        holds: true,
        first_violation_index: None,
        detail: Some(detail),
    }
}

fn verdict(name: &str, violation: Option<(usize, String)>) -> MonitorVerdict {
    let (first_violation_index, detail) = match violation {
        Some((i, d)) => (Some(i), Some(d)),
        None => (None, None),
    };
    MonitorVerdict {
        monitor: name.to_string(),
        applicable: true,
        holds: first_violation_index.is_none(),
        first_violation_index,
        detail,
    }
}

/// `None` when FP's `(m-1)`th move has the class the monitor needs.
fn gate(line: &Line, name: &str, want: ThreatClass) -> Option<MonitorVerdict> {
    if line.moves() <= line.pivot {
        return Some(not_applicable(
            name,
            format!("game ended before move {}", line.pivot),
        ));
    }
    let class = line.class(line.pivot);
    (class != want).then(|| {
        not_applicable(
            name,
            format!("FP's move {} is {class:?}, not {want:?}", line.pivot),
        )
    })
}

/// FP degrees after each move, updated incrementally.
struct Degrees(HashMap<Vertex, usize>);

impl Degrees {
    fn upto(line: &Line, index: usize) -> Degrees {
        let mut d = Degrees(HashMap::new());
        for x in (0..=index).step_by(2) {
            d.add(line.edge(x));
        }
        d
    }

    fn add(&mut self, e: &Edge) {
        for &v in e.vertices() {
            *self.0.entry(v).or_insert(0) += 1;
        }
    }

    fn has_leaf(&self, e: &Edge) -> bool {
        e.vertices().iter().any(|v| self.0.get(v) == Some(&1))
    }
}

/// FP threatens, or some FP edge from `since` on (exclusive) has lost its
/// degree-one vertex.
fn threat_or_lost_leaf(
    line: &Line,
    x: usize,
    since: usize,
    degrees: &Degrees,
) -> Option<(usize, String)> {
    let threats = line.after(x).threats(Player::First);
    if let Some(t) = threats.first() {
        return Some((x, format!("FP threatens {}", t.completing_edge)));
    }
    (since + 2..=x)
        .step_by(2)
        .find(|&y| !degrees.has_leaf(line.edge(y)))
        .map(|y| {
            (
                x,
                format!("FP edge {} (move {y}) has no degree-1 vertex", line.edge(y)),
            )
        })
}

/// Walks FP's moves after `since`, checking no threat and the pendant
/// structure of the edges added after `since`.
fn quiet_tail(line: &Line, since: usize) -> Option<(usize, String)> {
    let mut degrees = Degrees::upto(line, since);
    for x in (since + 2..line.moves()).step_by(2) {
        degrees.add(line.edge(x));
        if Some(x) == line.exempt {
            continue;
        }
        if let Some(v) = threat_or_lost_leaf(line, x, since, &degrees) {
            return Some(v);
        }
    }
    None
}

/// `monitor_lemma35`: FP's `(m-1)`th move is no threat. After every later
/// FP move, FP has no threat and each of its edges since then contains a
/// vertex of degree one in FP's graph.
pub fn monitor_lemma35(line: &mut Line) -> MonitorVerdict {
    if let Some(v) = gate(line, LEMMA35, ThreatClass::None) {
        return v;
    }
    verdict(LEMMA35, quiet_tail(line, line.pivot))
}

/// `monitor_lemma36`: FP's `(m-1)`th move is a special threat. FP never
/// wins, and after every FP move from the `m`th on FP has no threat and
/// FP's graph holds at most one copy of `H - z`.
pub fn monitor_lemma36(line: &mut Line) -> MonitorVerdict {
    if let Some(v) = gate(line, LEMMA36, ThreatClass::Special) {
        return v;
    }
    let xs: Vec<usize> = line.fp_moves(line.pivot + 2).collect();
    for x in xs {
        if let Some(t) = line.after(x).threats(Player::First).first() {
            return verdict(
                LEMMA36,
                Some((x, format!("FP threatens {}", t.completing_edge))),
            );
        }
        let n = line.copies_after(x).len();
        if n > 1 {
            return verdict(
                LEMMA36,
                Some((x, format!("FP's graph holds {n} copies of H - z"))),
            );
        }
    }
    verdict(LEMMA36, fp_win(line))
}

fn fp_win(line: &Line) -> Option<(usize, String)> {
    let last = line.states.last()?;
    match last.history().last() {
        Some((Player::First, e)) if has_win_through(last, Player::First, e).is_some() => {
            Some((last.ply() - 1, "FP completed a copy of H".to_string()))
        }
        _ => None,
    }
}

/// `monitor_lemma37`: FP's `(m-1)`th move is a standard threat. While FP
/// keeps making standard threats, FP's graph holds a unique copy `F1` of
/// `H - z`, every other FP edge meets `F1` in all but one vertex of degree
/// one, and the newest `F1 + e_i` is the only open one. From FP's first
/// other move on, FP never threatens again and its later edges keep a
/// degree-one vertex.
pub fn monitor_lemma37(line: &mut Line) -> MonitorVerdict {
    if let Some(v) = gate(line, LEMMA37, ThreatClass::Standard) {
        return v;
    }
    let mut x = line.pivot;
    while x < line.moves() && line.class(x) == ThreatClass::Standard {
        if Some(x) != line.exempt {
            if let Some(v) = chain_step(line, x) {
                return verdict(LEMMA37, Some(v));
            }
        }
        x += 2;
    }
    if x >= line.moves() {
        return verdict(LEMMA37, fp_win(line));
    }
    let class = line.class(x);
    if class != ThreatClass::None && Some(x) != line.exempt {
        return verdict(
            LEMMA37,
            Some((x, format!("FP's first move off the chain is {class:?}"))),
        );
    }
    verdict(LEMMA37, quiet_tail(line, x).or_else(|| fp_win(line)))
}

fn chain_step(line: &mut Line, x: usize) -> Option<(usize, String)> {
    let copies = line.copies_after(x).clone();
    if copies.len() != 1 {
        return Some((
            x,
            format!("FP's graph holds {} copies of H - z", copies.len()),
        ));
    }
    let f1: BTreeSet<&Edge> = copies.iter().next().expect("one copy").iter().collect();
    let vf1: BTreeSet<Vertex> = f1.iter().flat_map(|e| e.vertices().to_vec()).collect();
    let degrees = Degrees::upto(line, x);
    let s = line.after(x);
    for e in s.edges(Player::First).iter().filter(|e| !f1.contains(e)) {
        let outside: Vec<Vertex> = e
            .vertices()
            .iter()
            .copied()
            .filter(|v| !vf1.contains(v))
            .collect();
        if outside.len() != 1 || degrees.0.get(&outside[0]) != Some(&1) {
            return Some((
                x,
                format!("FP edge {e} does not hang off F1 by one degree-1 vertex"),
            ));
        }
    }
    let newest = line.edge(x);
    for t in s.threats(Player::First).iter() {
        let inside = t.image.iter().all(|e| e == newest || f1.contains(e));
        if !inside || !t.image.contains(newest) {
            return Some((
                x,
                format!(
                    "open copy completed by {} is not F1 + {newest}",
                    t.completing_edge
                ),
            ));
        }
    }
    None
}

/// Whenever FP has threats, they share a single free completing edge.
/// Applies to strategy-driven games only.
pub fn monitor_unique_threat(line: &Line, strategy_driven: bool) -> MonitorVerdict {
    if !strategy_driven {
        return not_applicable(UNIQUE_THREAT, "SP moves are not strategy-driven".into());
    }
    for x in line.fp_moves(0) {
        let threats = line.after(x).threats(Player::First);
        let completing: BTreeSet<&Edge> = threats.iter().map(|t| &t.completing_edge).collect();
        if completing.len() > 1 {
            return verdict(
                UNIQUE_THREAT,
                Some((x, format!("{} distinct completing edges", completing.len()))),
            );
        }
    }
    verdict(UNIQUE_THREAT, None)
}
