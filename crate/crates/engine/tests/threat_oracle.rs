use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use engine::*;
use hypercore::oracle::naive_monomorphisms;
use hypercore::*;
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_edge(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Edge {
    let ids: Vec<Vertex> = sample(rng, n, k).into_iter().map(|i| i as Vertex).collect();
    make_edge(&ids, k).unwrap()
}

/// A small 3-uniform target with deg(0) = 2 and minimum degree 2.
fn small_target(rng: &mut ChaCha8Rng) -> Target {
    loop {
        let n = rng.gen_range(4..=5);
        let m = rng.gen_range(3..=5);
        let mut h = Hypergraph::new(3).unwrap();
        for _ in 0..m {
            h.add_edge(random_edge(rng, n, 3)).unwrap();
        }
        if let Ok(t) = Target::new(h, 0) {
            return t;
        }
    }
}

fn random_board(rng: &mut ChaCha8Rng, target: Target, n: usize) -> GameState {
    let k = target.k();
    let mut s = GameState::new(Arc::new(target));
    let plies = rng.gen_range(0..=14);
    for _ in 0..plies {
        let p = if rng.gen_bool(0.65) {
            Player::First
        } else {
            Player::Second
        };
        let e = random_edge(rng, n, k);
        if s.is_free(&e) {
            s = s.with_edge(p, e).unwrap();
        }
    }
    s
}

type Key = (Edge, Vec<Edge>, ThreatKind);

fn naive_threats(s: &GameState, p: Player) -> BTreeSet<Key> {
    let t = s.target();
    let host = Hypergraph::from_edges(t.k(), s.edges(p).iter().cloned()).unwrap();
    let mut best: BTreeMap<(Edge, Vec<Edge>), ThreatKind> = BTreeMap::new();
    for e in t.graph().edges() {
        let sub = t.graph().remove_edges([e]).unwrap();
        for m in naive_monomorphisms(&sub, &host) {
            let c = m.apply_edge(e).unwrap();
            if !s.is_free(&c) {
                continue;
            }
            let mut image: Vec<Edge> = sub
                .edges()
                .iter()
                .map(|x| m.apply_edge(x).unwrap())
                .collect();
            image.sort();
            let kind = t.classify(e);
            // an automorphism can give one copy two readings; standard wins
            match best.get(&(c.clone(), image.clone())) {
                Some(&k) if k <= kind => {}
                _ => {
                    best.insert((c, image), kind);
                }
            }
        }
    }
    best.into_iter().map(|((c, i), k)| (c, i, k)).collect()
}

fn keys(ts: &[Threat]) -> BTreeSet<Key> {
    ts.iter()
        .map(|t| (t.completing_edge.clone(), t.image.clone(), t.kind))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn threats_match_naive_search(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = small_target(&mut rng);
        let s = random_board(&mut rng, target, 7);
        for p in [Player::First, Player::Second] {
            let fast = find_threats(&s, p);
            prop_assert_eq!(keys(&fast), naive_threats(&s, p));
            for t in &fast {
                prop_assert!(t.open);
                prop_assert_eq!(t.owner, p);
                prop_assert_eq!(t.copy.apply_edge(&t.template_edge), Some(t.completing_edge.clone()));
                prop_assert_eq!(classify(s.target(), t), t.kind);
            }
        }
    }

    #[test]
    fn win_iff_some_completing_edge_owned(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = small_target(&mut rng);
        let s = random_board(&mut rng, target, 7);
        let p = Player::First;
        let owned_completion = copy_statuses(&s, p)
            .iter()
            .any(|c| s.owner_of(&c.completing_edge) == Some(p));
        prop_assert_eq!(has_win(&s, p).is_some(), owned_completion);
    }

    #[test]
    fn has_win_is_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = small_target(&mut rng);
        let mut s = random_board(&mut rng, target, 7);
        let mut won = has_win(&s, Player::First).is_some();
        for _ in 0..6 {
            let e = random_edge(&mut rng, 8, 3);
            if !s.is_free(&e) {
                continue;
            }
            s = s.with_edge(Player::First, e).unwrap();
            let now = has_win(&s, Player::First).is_some();
            prop_assert!(!won || now);
            won = now;
        }
    }

    #[test]
    fn would_threaten_agrees_with_search(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = small_target(&mut rng);
        let s = random_board(&mut rng, target, 7);
        let e = random_edge(&mut rng, 8, 3);
        match would_threaten(&s, Player::Second, &e) {
            Ok(b) => {
                let next = s.with_edge(Player::Second, e).unwrap();
                prop_assert_eq!(b, !naive_threats(&next, Player::Second).is_empty());
            }
            Err(GameError::EdgeTaken(_)) => prop_assert!(!s.is_free(&e)),
            Err(other) => prop_assert!(false, "unexpected {other}"),
        }
    }

    #[test]
    fn anchored_copies_are_the_copies_through_the_anchor(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = small_target(&mut rng);
        let s = random_board(&mut rng, target, 7);
        let mine = s.edges(Player::First).to_vec();
        if let Some(anchor) = mine.choose(&mut rng) {
            let all: Vec<_> = copy_statuses(&s, Player::First)
                .into_iter()
                .filter(|c| c.image.contains(anchor))
                .collect();
            prop_assert_eq!(copy_statuses_through(&s, Player::First, anchor), all);
        }
    }
}

/// Plants `H5 - e` under a random relabelling among noise edges.
fn planted(seed: u64) -> (GameState, H5Edge, VertexMap) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let missing = *H5Edge::ALL.choose(&mut rng).unwrap();
    let mut ids: Vec<Vertex> = (0..16).collect();
    ids.shuffle(&mut rng);
    let map = VertexMap::new((0..10).map(|v| (v, ids[v as usize]))).unwrap();
    let mut fp: Vec<Edge> = H5Edge::ALL
        .iter()
        .filter(|&&n| n != missing)
        .map(|n| map.apply_edge(&n.edge()).unwrap())
        .collect();
    for _ in 0..3 {
        fp.push(random_edge(&mut rng, 16, 5));
    }
    fp.sort();
    fp.dedup();
    fp.shuffle(&mut rng);
    let completing = map.apply_edge(&missing.edge()).unwrap();
    let mut s = GameState::new(Arc::new(Target::h5()));
    for e in fp {
        if e != completing && s.is_free(&e) {
            s = s.with_edge(Player::First, e).unwrap();
        }
    }
    (s, missing, map)
}

#[test]
fn planted_h5_copies_are_found() {
    for seed in 0..40 {
        let (s, missing, map) = planted(seed);
        let completing = map.apply_edge(&missing.edge()).unwrap();
        let ts = find_threats(&s, Player::First);
        let hit = ts
            .iter()
            .find(|t| t.completing_edge == completing)
            .unwrap_or_else(|| panic!("seed {seed}: no threat at {completing}"));
        let expect = if matches!(missing, H5Edge::R | H5Edge::G) {
            ThreatKind::Standard
        } else {
            ThreatKind::Special
        };
        assert_eq!(hit.kind, expect, "seed {seed}");

        let won = s.with_edge(Player::First, completing.clone()).unwrap();
        assert!(has_win(&won, Player::First).is_some(), "seed {seed}");
        let blocked = s.with_edge(Player::Second, completing).unwrap();
        assert!(keys(&find_threats(&blocked, Player::First)).len() < keys(&ts).len());
    }
}

#[test]
fn replay_is_deterministic() {
    let (s, _, _) = planted(3);
    let mut game = GameState::new(s.target().clone());
    let mut filler = 100;
    for e in s.edges(Player::First) {
        game = game.claim(Player::First, e.clone()).unwrap();
        let pad: Vec<Vertex> = (filler..filler + 5).collect();
        filler += 5;
        game = game
            .claim(Player::Second, make_edge(&pad, 5).unwrap())
            .unwrap();
    }
    let again = GameState::replay(game.target().clone(), game.history()).unwrap();
    assert_eq!(again, game);
    assert_eq!(
        keys(&find_threats(&again, Player::First)),
        keys(&find_threats(&game, Player::First))
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn incremental_threats_match_fresh_search(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = Arc::new(small_target(&mut rng));
        let mut s = GameState::new(target.clone());
        for _ in 0..16 {
            // keep both lists warm so every step is incremental
            s.threats(Player::First);
            s.threats(Player::Second);
            let e = random_edge(&mut rng, 7, 3);
            if !s.is_free(&e) {
                continue;
            }
            let mover = s.to_move();
            s = s.claim(mover, e.clone()).unwrap();
            let cold = GameState::replay(target.clone(), s.history()).unwrap();
            for p in [Player::First, Player::Second] {
                let warm = s.threats(p);
                let fresh = cold.threats(p);
                prop_assert_eq!(keys(&warm), keys(&fresh));
                prop_assert_eq!(&*warm, &*fresh);
            }
            let before_won = GameState::replay(target.clone(), &s.history()[..s.ply() - 1])
                .map(|b| has_win(&b, mover).is_some())
                .unwrap();
            if !before_won {
                prop_assert_eq!(has_win_through(&s, mover, &e).is_some(), has_win(&s, mover).is_some());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn minus_z_copies_grow_by_the_copies_through_the_new_edge(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = Arc::new(small_target(&mut rng));
        let mut s = GameState::new(target);
        for _ in 0..14 {
            let e = random_edge(&mut rng, 7, 3);
            if !s.is_free(&e) {
                continue;
            }
            let before: BTreeSet<Vec<Edge>> =
                minus_z_copies(&s, Player::First).into_iter().map(|(i, _)| i).collect();
            s = s.with_edge(Player::First, e.clone()).unwrap();
            let after: BTreeSet<Vec<Edge>> =
                minus_z_copies(&s, Player::First).into_iter().map(|(i, _)| i).collect();
            let through: BTreeSet<Vec<Edge>> =
                minus_z_copies_through(&s, Player::First, &e).into_iter().collect();
            prop_assert!(through.iter().all(|i| i.contains(&e)));
            prop_assert_eq!(after, before.union(&through).cloned().collect::<BTreeSet<_>>());
        }
    }
}
