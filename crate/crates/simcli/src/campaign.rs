//! Seeded batches of games across the adversary suite.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use engine::{MonitorVerdict, Outcome};
use rayon::prelude::*;
use serde::Serialize;
use strategies::ADVERSARIES;

use crate::error::SimError;
use crate::game::{run_game, Played};

/// Env var naming a default seed corpus file for `campaign`.
pub const SEEDS_ENV: &str = "RAMSEY_DRAW_SEEDS";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameSpec {
    pub adversary: String,
    pub seed: u64,
}

/// Seeds `first..first + games`, the adversary picked by `seed % 6`.
pub fn default_specs(games: usize, first: u64) -> Vec<GameSpec> {
    (first..first + games as u64)
        .map(|seed| GameSpec {
            adversary: ADVERSARIES[(seed % ADVERSARIES.len() as u64) as usize].to_string(),
            seed,
        })
        .collect()
}

/// Parses a seed corpus: one game per line, either `<seed>` (adversary
/// chosen as in [`default_specs`]) or `<adversary> <seed>`. `#` comments.
pub fn parse_specs(text: &str) -> Result<Vec<GameSpec>, String> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let bad = || format!("line {}: expected `[adversary] seed`", i + 1);
        let (adversary, seed) = match words.as_slice() {
            [s] => {
                let seed: u64 = s.parse().map_err(|_| bad())?;
                let spec = default_specs(1, seed).remove(0);
                (spec.adversary, seed)
            }
            [a, s] => (a.to_string(), s.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        if !ADVERSARIES.contains(&adversary.as_str()) {
            return Err(format!("line {}: unknown adversary {adversary:?}", i + 1));
        }
        out.push(GameSpec { adversary, seed });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GameSummary {
    pub adversary: String,
    pub seed: u64,
    pub outcome: Outcome,
    pub plies: usize,
    pub theorem_violation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub failed_monitors: Vec<MonitorVerdict>,
}

impl GameSummary {
    fn of(spec: &GameSpec, p: &Played) -> GameSummary {
        let footer = p
            .transcript
            .footer
            .as_ref()
            .expect("finished games have footers");
        GameSummary {
            adversary: spec.adversary.clone(),
            seed: spec.seed,
            outcome: footer.outcome,
            plies: p.transcript.moves.len(),
            theorem_violation: p.theorem_violation(),
            failure: footer.failure.clone(),
            failed_monitors: footer
                .monitors
                .iter()
                .filter(|m| !m.holds)
                .cloned()
                .collect(),
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::SpWin | Outcome::OngoingAtHorizon)
            && !self.theorem_violation
            && self.failed_monitors.is_empty()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Tally {
    pub games: usize,
    pub fp_win: usize,
    pub sp_win: usize,
    pub ongoing_at_horizon: usize,
    pub aborted: usize,
    pub plies: usize,
}

impl Tally {
    fn add(&mut self, g: &GameSummary) {
        self.games += 1;
        self.plies += g.plies;
        match g.outcome {
            Outcome::FpWin => self.fp_win += 1,
            Outcome::SpWin => self.sp_win += 1,
            Outcome::OngoingAtHorizon => self.ongoing_at_horizon += 1,
            Outcome::Aborted => self.aborted += 1,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MonitorTally {
    pub applicable: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CampaignReport {
    pub horizon: usize,
    pub total: Tally,
    pub by_adversary: BTreeMap<String, Tally>,
    pub monitors: BTreeMap<String, MonitorTally>,
    pub theorem_violations: usize,
    /// Every game that did not pass, in (adversary, seed) order.
    pub failures: Vec<GameSummary>,
    #[serde(serialize_with = "secs")]
    pub elapsed: Duration,
}

fn secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let t = &self.total;
        writeln!(out, "games: {} (horizon {})", t.games, self.horizon).unwrap();
        writeln!(
            out,
            "outcomes: FpWin {} SpWin {} OngoingAtHorizon {} Aborted {}",
            t.fp_win, t.sp_win, t.ongoing_at_horizon, t.aborted
        )
        .unwrap();
        writeln!(out, "theorem violations: {}", self.theorem_violations).unwrap();
        for (name, a) in &self.by_adversary {
            writeln!(
                out,
                "  {name}: {} games, FpWin {} SpWin {} ongoing {} aborted {}",
                a.games, a.fp_win, a.sp_win, a.ongoing_at_horizon, a.aborted
            )
            .unwrap();
        }
        for (name, m) in &self.monitors {
            writeln!(
                out,
                "monitor {name}: applicable in {}, failed in {}",
                m.applicable, m.failed
            )
            .unwrap();
        }
        for f in &self.failures {
            writeln!(
                out,
                "FAILED {} seed {}: {:?} {}",
                f.adversary,
                f.seed,
                f.outcome,
                f.failure.as_deref().unwrap_or("")
            )
            .unwrap();
        }
        writeln!(out, "elapsed: {:.1}s", self.elapsed.as_secs_f64()).unwrap();
        let verdict = if self.passed() {
            "draw-consistent"
        } else {
            "FAILED"
        };
        writeln!(out, "verdict: {verdict}").unwrap();
        out
    }
}

/// Runs every game in parallel. `keep` sees each finished game, e.g. to
/// save transcripts of failures.
pub fn run_campaign<F>(
    specs: &[GameSpec],
    horizon: usize,
    keep: F,
) -> Result<CampaignReport, SimError>
where
    F: Fn(&GameSpec, &Played, &GameSummary) + Sync,
{
    let t0 = Instant::now();
    let summaries = specs
        .par_iter()
        .map(|spec| {
            let p = run_game(&spec.adversary, horizon, spec.seed)?;
            let g = GameSummary::of(spec, &p);
            let monitors = p
                .transcript
                .footer
                .as_ref()
                .expect("footer")
                .monitors
                .clone();
            keep(spec, &p, &g);
            Ok((g, monitors))
        })
        .collect::<Result<Vec<_>, SimError>>()?;

    let mut total = Tally::default();
    let mut by_adversary: BTreeMap<String, Tally> = BTreeMap::new();
    let mut monitors: BTreeMap<String, MonitorTally> = BTreeMap::new();
    let mut theorem_violations = 0;
    let mut failures = Vec::new();
    for (g, verdicts) in &summaries {
        total.add(g);
        by_adversary.entry(g.adversary.clone()).or_default().add(g);
        for v in verdicts {
            let m = monitors.entry(v.monitor.clone()).or_default();
            m.applicable += v.applicable as usize;
            m.failed += !v.holds as usize;
        }
        theorem_violations += g.theorem_violation as usize;
        if !g.passed() {
            failures.push(g.clone());
        }
    }
    failures.sort_by(|a, b| (&a.adversary, a.seed).cmp(&(&b.adversary, b.seed)));
    Ok(CampaignReport {
        horizon,
        total,
        by_adversary,
        monitors,
        theorem_violations,
        failures,
        elapsed: t0.elapsed(),
    })
}
