use std::sync::Arc;

use engine::{has_win_through, GameState, Player, Target};
use hypercore::{is_isomorphic, Hypergraph};
use proptest::prelude::*;
use strategies::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // SP only ever claims free edges, finishes H - z in its first seven
    // moves and FP never wins, whoever FP is.
    #[test]
    fn strategy_invariants_hold(which in 0..ADVERSARIES.len(), seed in any::<u64>()) {
        let target = Arc::new(Target::h5());
        let mut fp = make_adversary(ADVERSARIES[which], &target, seed).unwrap();
        let mut sp = DrawingStrategy::new(target.clone()).unwrap();
        let mut s = GameState::new(target.clone());
        while s.ply() < 60 {
            let e = fp.next_move(&s);
            prop_assert!(s.is_free(&e));
            s = s.claim(Player::First, e.clone()).unwrap();
            prop_assert!(has_win_through(&s, Player::First, &e).is_none());
            let (e, label) = sp.reply(&s).unwrap();
            prop_assert!(s.is_free(&e), "{label}");
            let built = s.edges(Player::Second).len();
            prop_assert_eq!(label.starts_with("I:build"), built < 7);
            s = s.claim(Player::Second, e.clone()).unwrap();
            if built + 1 == 7 {
                let g = Hypergraph::from_edges(5, s.edges(Player::Second).iter().cloned()).unwrap();
                prop_assert!(is_isomorphic(&g, target.minus_z()).is_some());
            }
            if has_win_through(&s, Player::Second, &e).is_some() {
                break;
            }
        }
    }
}
