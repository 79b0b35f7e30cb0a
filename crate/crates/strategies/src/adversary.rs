//! First-player adversaries for exercising the strategy.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use engine::{would_threaten, GameState, Player, Target};
use hypercore::{make_edge, Edge, Host, Pattern, Restriction, Vertex};
use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub trait FpAdversary: Send {
    fn name(&self) -> &'static str;

    /// A free edge for FP to claim. Called only on FP's turn.
    fn next_move(&mut self, state: &GameState) -> Edge;
}

pub const ADVERSARIES: [&str; 6] = [
    "random-local",
    "greedy-threat",
    "standard-chain",
    "special-once",
    "pacifist",
    "blocker",
];

/// `adversary_suite`: one instance of every adversary, all seeded with `seed`.
pub fn adversary_suite(target: &Target, seed: u64) -> Vec<Box<dyn FpAdversary>> {
    ADVERSARIES
        .iter()
        .map(|n| make_adversary(n, target, seed).expect("known name"))
        .collect()
}

pub fn make_adversary(name: &str, target: &Target, seed: u64) -> Option<Box<dyn FpAdversary>> {
    let rng = ChaCha8Rng::seed_from_u64(seed);
    Some(match name {
        "random-local" => Box::new(RandomLocal { rng }),
        "pacifist" => Box::new(Pacifist { rng }),
        "blocker" => Box::new(Blocker { rng }),
        "greedy-threat" => Box::new(GreedyThreat::new(target, rng)),
        "standard-chain" => Box::new(StandardChain::new(target, rng)),
        "special-once" => Box::new(SpecialOnce::new(target, rng)),
        _ => return None,
    })
}

fn k_of(state: &GameState) -> usize {
    state.target().k()
}

fn fresh_edge(state: &GameState) -> Edge {
    make_edge(&state.fresh_vertices(k_of(state)), k_of(state)).expect("distinct")
}

/// A uniform k-subset of the vertices in play plus one fresh vertex
/// (padded with further fresh vertices early on).
fn random_local_candidate(rng: &mut ChaCha8Rng, state: &GameState) -> Edge {
    let k = k_of(state);
    let mut pool: Vec<Vertex> = state.vertices_in_play().into_iter().collect();
    let need = (k + 1).saturating_sub(pool.len()).max(1);
    pool.extend(state.fresh_vertices(need));
    let ids: Vec<Vertex> = sample(rng, pool.len(), k)
        .into_iter()
        .map(|i| pool[i])
        .collect();
    make_edge(&ids, k).expect("distinct")
}

fn random_local(rng: &mut ChaCha8Rng, state: &GameState) -> Edge {
    for _ in 0..64 {
        let e = random_local_candidate(rng, state);
        if state.is_free(&e) {
            return e;
        }
    }
    fresh_edge(state)
}

fn first_completing(state: &GameState, p: Player) -> Option<Edge> {
    state
        .threats(p)
        .iter()
        .map(|t| t.completing_edge.clone())
        .min()
}

/// Win if possible, else block SP's threat.
fn win_or_block(state: &GameState) -> Option<Edge> {
    first_completing(state, Player::First).or_else(|| first_completing(state, Player::Second))
}

pub struct RandomLocal {
    rng: ChaCha8Rng,
}

impl FpAdversary for RandomLocal {
    fn name(&self) -> &'static str {
        "random-local"
    }

    fn next_move(&mut self, state: &GameState) -> Edge {
        random_local(&mut self.rng, state)
    }
}

/// Random-local restricted to moves that create no FP threat.
pub struct Pacifist {
    rng: ChaCha8Rng,
}

impl FpAdversary for Pacifist {
    fn name(&self) -> &'static str {
        "pacifist"
    }

    fn next_move(&mut self, state: &GameState) -> Edge {
        for _ in 0..64 {
            let e = random_local_candidate(&mut self.rng, state);
            if state.is_free(&e) && would_threaten(state, Player::First, &e) == Ok(false) {
                return e;
            }
        }
        fresh_edge(state)
    }
}

/// Answers every SP threat; random-local otherwise.
pub struct Blocker {
    rng: ChaCha8Rng,
}

impl FpAdversary for Blocker {
    fn name(&self) -> &'static str {
        "blocker"
    }

    fn next_move(&mut self, state: &GameState) -> Edge {
        win_or_block(state).unwrap_or_else(|| random_local(&mut self.rng, state))
    }
}

/// Places a target edge on the board, mapping target vertices to board
/// vertices and allocating fresh ones on first use.
#[derive(Default)]
struct Placement {
    map: BTreeMap<Vertex, Vertex>,
}

impl Placement {
    fn place(&mut self, e: &Edge, state: &GameState) -> Edge {
        let missing: Vec<Vertex> = e
            .vertices()
            .iter()
            .copied()
            .filter(|v| !self.map.contains_key(v))
            .collect();
        for (v, f) in missing.iter().zip(state.fresh_vertices(missing.len())) {
            self.map.insert(*v, f);
        }
        let ids: Vec<Vertex> = e.vertices().iter().map(|v| self.map[v]).collect();
        make_edge(&ids, e.len()).expect("injective placement")
    }
}

/// Builds `H - z` on fresh vertices, then makes a seed-chosen number of
/// standard threats (pendant copies of `r` or `g` through fresh vertices),
/// then plays as [`Blocker`].
pub struct StandardChain {
    rng: ChaCha8Rng,
    plan: Vec<Edge>,
    r: Edge,
    g: Edge,
    z: Vertex,
    placement: Placement,
    chain_left: usize,
}

impl StandardChain {
    fn new(target: &Target, mut rng: ChaCha8Rng) -> StandardChain {
        let mut plan: Vec<Edge> = target.minus_z().edges().iter().cloned().collect();
        plan.shuffle(&mut rng);
        let chain_left = rng.gen_range(1..=95);
        StandardChain {
            rng,
            plan,
            r: target.r().clone(),
            g: target.g().clone(),
            z: target.z(),
            placement: Placement::default(),
            chain_left,
        }
    }
}

impl FpAdversary for StandardChain {
    fn name(&self) -> &'static str {
        "standard-chain"
    }

    fn next_move(&mut self, state: &GameState) -> Edge {
        if let Some(e) = win_or_block(state) {
            return e;
        }
        let built = state.edges(Player::First).len();
        if built < self.plan.len() {
            let e = self.placement.place(&self.plan[built].clone(), state);
            if state.is_free(&e) {
                return e;
            }
        } else if self.chain_left > 0 {
            self.chain_left -= 1;
            let pendant = if self.rng.gen_bool(0.5) {
                &self.r
            } else {
                &self.g
            };
            // a fresh board vertex plays z every time
            self.placement.map.remove(&self.z);
            let e = self.placement.place(&pendant.clone(), state);
            if state.is_free(&e) {
                return e;
            }
        }
        random_local(&mut self.rng, state)
    }
}

/// Builds `H - e` for a seed-chosen `e` outside `{r, g}`, so that its
/// `(m-1)`th move completes a special threat, then plays as [`Blocker`].
pub struct SpecialOnce {
    rng: ChaCha8Rng,
    plan: Vec<Edge>,
    placement: Placement,
}

impl SpecialOnce {
    fn new(target: &Target, mut rng: ChaCha8Rng) -> SpecialOnce {
        let special: Vec<&Edge> = target
            .graph()
            .edges()
            .iter()
            .filter(|e| *e != target.r() && *e != target.g())
            .collect();
        let missing = (*special.choose(&mut rng).expect("m > 2")).clone();
        let mut plan: Vec<Edge> = target
            .graph()
            .edges()
            .iter()
            .filter(|e| **e != missing)
            .cloned()
            .collect();
        plan.shuffle(&mut rng);
        SpecialOnce {
            rng,
            plan,
            placement: Placement::default(),
        }
    }
}

impl FpAdversary for SpecialOnce {
    fn name(&self) -> &'static str {
        "special-once"
    }

    fn next_move(&mut self, state: &GameState) -> Edge {
        if let Some(e) = win_or_block(state) {
            return e;
        }
        let built = state.edges(Player::First).len();
        if built < self.plan.len() {
            let e = self.placement.place(&self.plan[built].clone(), state);
            if state.is_free(&e) {
                return e;
            }
        }
        random_local(&mut self.rng, state)
    }
}

/// Wins, else blocks, else claims any edge that creates a threat, else
/// random-local. Threat-creating edges come from embeddings of `H - {e, f}`
/// into FP's graph: claiming the image of `f` leaves the image of `e` as
/// the completing edge.
pub struct GreedyThreat {
    rng: ChaCha8Rng,
    near: Vec<NearTemplate>,
}

struct NearTemplate {
    missing: Edge,
    claim: Edge,
    pattern: Pattern,
}

impl GreedyThreat {
    fn new(target: &Target, rng: ChaCha8Rng) -> GreedyThreat {
        let edges: Vec<&Edge> = target.graph().edges().iter().collect();
        let mut near = Vec::new();
        for &e in &edges {
            for &f in &edges {
                if e != f {
                    let sub = target
                        .graph()
                        .remove_edges([e, f])
                        .expect("edges of target");
                    near.push(NearTemplate {
                        missing: e.clone(),
                        claim: f.clone(),
                        pattern: Pattern::new(&sub),
                    });
                }
            }
        }
        GreedyThreat { rng, near }
    }

    fn threatening_edge(&self, state: &GameState) -> Option<Edge> {
        let k = k_of(state);
        let mine = state.edges(Player::First);
        let m = state.target().m();
        if mine.len() + 2 < m {
            return None;
        }
        let host = Host::from_edges(k, mine.iter());
        let fresh = state.fresh_vertices(k);
        for t in &self.near {
            let mut found = None;
            t.pattern.search(&host, &Restriction::new(), |map| {
                // uncovered target vertices get fresh board vertices
                let mut spare = fresh.iter().copied();
                let mut extra: BTreeMap<Vertex, Vertex> = BTreeMap::new();
                let mut lift = |e: &Edge| {
                    let ids: Vec<Vertex> = e
                        .vertices()
                        .iter()
                        .map(|&v| {
                            map.get(v).unwrap_or_else(|| {
                                *extra
                                    .entry(v)
                                    .or_insert_with(|| spare.next().expect("k spares"))
                            })
                        })
                        .collect();
                    make_edge(&ids, k).expect("injective")
                };
                let claim = lift(&t.claim);
                let completing = lift(&t.missing);
                if state.is_free(&claim) && state.is_free(&completing) {
                    found = Some(claim);
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

impl FpAdversary for GreedyThreat {
    fn name(&self) -> &'static str {
        "greedy-threat"
    }

    fn next_move(&mut self, state: &GameState) -> Edge {
        win_or_block(state)
            .or_else(|| self.threatening_edge(state))
            .unwrap_or_else(|| random_local(&mut self.rng, state))
    }
}
