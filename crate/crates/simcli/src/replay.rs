//! Re-deriving a transcript from its moves.

use engine::{Outcome, Player, SpDriver, Transcript};

use crate::error::SimError;
use crate::game::{assemble, strategy_failure, strategy_labels};

/// Result of comparing a transcript with its re-derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayCheck {
    pub identical: bool,
    /// 1-based line number and the two versions of the first differing line.
    pub first_difference: Option<(usize, String, String)>,
    pub rederived: String,
}

/// Recomputes annotations, stage labels, outcome and monitor verdicts
/// from the header and the move list.
pub fn rederive(t: &Transcript) -> Result<Transcript, SimError> {
    let states = t.states()?;
    let labels = match t.header.sp_driver {
        SpDriver::Strategy => strategy_labels(&states)?,
        SpDriver::Manual => t
            .moves
            .iter()
            .filter(|m| m.player == Player::Second)
            .map(|m| m.annotations.stage.clone().unwrap_or_default())
            .collect(),
    };
    let failure = match &t.footer {
        Some(f) if f.outcome == Outcome::Aborted => match t.header.sp_driver {
            SpDriver::Strategy => strategy_failure(&states).or_else(|| f.failure.clone()),
            SpDriver::Manual => f.failure.clone(),
        },
        _ => None,
    };
    let mut out = assemble(t.header.clone(), &states, &labels, failure);
    if t.footer.is_none() {
        out.footer = None;
    }
    Ok(out)
}

/// `replay`: parse, re-derive and byte-compare.
pub fn replay_text(text: &str) -> Result<ReplayCheck, SimError> {
    let t = Transcript::from_jsonl(text)?;
    let rederived = rederive(&t)?.to_jsonl();
    let first_difference = text
        .lines()
        .map(Some)
        .chain(std::iter::repeat(None))
        .zip(rederived.lines().map(Some).chain(std::iter::repeat(None)))
        .take_while(|(a, b)| a.is_some() || b.is_some())
        .enumerate()
        .find(|(_, (a, b))| a != b)
        .map(|(i, (a, b))| {
            (
                i + 1,
                a.unwrap_or("<missing>").to_string(),
                b.unwrap_or("<missing>").to_string(),
            )
        });
    Ok(ReplayCheck {
        identical: text == rederived,
        first_difference,
        rederived,
    })
}
