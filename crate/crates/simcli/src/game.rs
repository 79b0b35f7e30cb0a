//! Playing one game and turning its move list into a transcript.

use std::sync::Arc;

use engine::{
    annotate, has_win_through, Footer, GameState, Header, MoveRecord, Outcome, Player, SpDriver,
    Target, Transcript,
};
use strategies::{
    make_adversary, sp_move, DrawingStrategy, FpAdversary, SecondPlayer, SpState, StrategyError,
};

use crate::error::SimError;
use crate::monitors;

/// A finished game: the transcript plus the positions after every move,
/// kept so callers can run further checks without replaying.
#[derive(Clone, Debug)]
pub struct Played {
    pub transcript: Transcript,
    pub states: Vec<GameState>,
    pub error: Option<StrategyError>,
}

impl Played {
    pub fn outcome(&self) -> Outcome {
        self.transcript
            .footer
            .as_ref()
            .map(|f| f.outcome)
            .unwrap_or(Outcome::OngoingAtHorizon)
    }

    pub fn theorem_violation(&self) -> bool {
        matches!(self.error, Some(StrategyError::TheoremViolation { .. }))
    }
}

/// `run_game`: the named adversary against the drawing strategy on H5.
pub fn run_game(adversary: &str, horizon: usize, seed: u64) -> Result<Played, SimError> {
    let target = Arc::new(Target::h5());
    let mut fp = make_adversary(adversary, &target, seed)
        .ok_or_else(|| SimError::UnknownAdversary(adversary.to_string()))?;
    let mut sp = DrawingStrategy::new(target.clone())?;
    play(target, fp.as_mut(), &mut sp, adversary, seed, horizon)
}

/// Alternates `fp` and `sp` from the empty board until someone wins, SP
/// fails, or `horizon` plies have been played.
pub fn play(
    target: Arc<Target>,
    fp: &mut dyn FpAdversary,
    sp: &mut dyn SecondPlayer,
    adversary: &str,
    seed: u64,
    horizon: usize,
) -> Result<Played, SimError> {
    let need = 2 * target.m();
    if horizon < need {
        return Err(SimError::Horizon { horizon, need });
    }
    let header = Header::new(&target, adversary, seed, horizon, sp.driver());
    let mut s = GameState::new(target);
    let mut states = vec![s.clone()];
    let mut labels = Vec::new();
    let mut error = None;
    let mut failure = None;
    while s.ply() < horizon {
        let (mover, edge) = match s.to_move() {
            Player::First => (Player::First, fp.next_move(&s)),
            Player::Second => match sp.reply(&s) {
                Ok((e, label)) => {
                    labels.push(label);
                    (Player::Second, e)
                }
                Err(e) => {
                    failure = Some(e.to_string());
                    error = Some(e);
                    break;
                }
            },
        };
        s = match s.claim(mover, edge) {
            Ok(next) => next,
            Err(e) => {
                failure = Some(format!("{mover} move rejected: {e}"));
                break;
            }
        };
        states.push(s.clone());
        if last_move_wins(&s) {
            break;
        }
    }
    let transcript = assemble(header, &states, &labels, failure);
    Ok(Played {
        transcript,
        states,
        error,
    })
}

fn last_move_wins(s: &GameState) -> bool {
    match s.history().last() {
        Some((p, e)) => has_win_through(s, *p, e).is_some(),
        None => false,
    }
}

/// Builds the transcript for a sequence of positions. `sp_labels` are the
/// strategy stage labels of SP's moves in order. Everything else is
/// derived from the positions, so replaying a transcript reproduces it.
pub fn assemble(
    header: Header,
    states: &[GameState],
    sp_labels: &[String],
    failure: Option<String>,
) -> Transcript {
    let mut t = Transcript::new(header);
    let last = states.last().expect("at least the empty board");
    let mut labels = sp_labels.iter();
    for (i, (p, e)) in last.history().iter().enumerate() {
        let mut annotations = annotate(&states[i + 1], *p);
        if *p == Player::Second {
            annotations.stage = labels.next().cloned();
        }
        t.moves.push(MoveRecord {
            move_index: i,
            player: *p,
            edge: e.clone(),
            annotations,
        });
    }
    let outcome = if last_move_wins(last) {
        match last.history().last().expect("a move was made").0 {
            Player::First => Outcome::FpWin,
            Player::Second => Outcome::SpWin,
        }
    } else if failure.is_some() {
        Outcome::Aborted
    } else {
        Outcome::OngoingAtHorizon
    };
    let monitors = monitors::evaluate_states(&t, states);
    t.footer = Some(Footer {
        outcome,
        monitors,
        failure,
    });
    t
}

/// Strategy labels for the SP moves of `states`, recomputed by following
/// the strategy. Fails where an SP move is not the strategy's.
pub(crate) fn strategy_labels(states: &[GameState]) -> Result<Vec<String>, SimError> {
    let Some(first) = states.first() else {
        return Ok(Vec::new());
    };
    let mut sp = SpState::new(first.target().clone())?;
    let mut out = Vec::new();
    for (i, s) in states.iter().enumerate().skip(1) {
        let (p, e) = s.history().last().expect("one move per position");
        if *p != Player::Second {
            continue;
        }
        let reply = sp_move(&states[i - 1], &sp)?;
        if reply.edge != *e {
            return Err(SimError::OffStrategy {
                index: i - 1,
                played: e.clone(),
                strategy: reply.edge,
            });
        }
        out.push(reply.label());
        sp = reply.state;
    }
    Ok(out)
}

/// What the strategy does in the final position, used to re-derive the
/// failure of an aborted run.
pub(crate) fn strategy_failure(states: &[GameState]) -> Option<String> {
    let last = states.last()?;
    if last.to_move() != Player::Second {
        return None;
    }
    let sp = SpState::replay(last).ok()?;
    sp_move(last, &sp).err().map(|e| e.to_string())
}

pub(crate) fn driver_is_strategy(t: &Transcript) -> bool {
    t.header.sp_driver == SpDriver::Strategy
}
