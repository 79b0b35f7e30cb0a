//! Rigidity reports on small random 3-graphs against the naive oracle.

use hypercore::oracle::naive_monomorphisms;
use hypercore::{Edge, Hypergraph};
use proptest::prelude::*;
use verifier::properties::{edge_pairs, rigidity};

fn small_graph() -> impl Strategy<Value = Hypergraph> {
    proptest::collection::btree_set(proptest::collection::btree_set(0u32..7, 3), 3..8).prop_map(
        |sets| {
            let edges = sets
                .into_iter()
                .map(|s| Edge::from_set(&s.into_iter().collect::<Vec<_>>()).unwrap());
            Hypergraph::from_edges(3, edges).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn rigidity_reports_match_the_oracle(h in small_graph()) {
        for (e, f) in edge_pairs(&h) {
            let r = rigidity(&h, &[&e, &f]);
            let rest = h.remove_edges([&e, &f]).unwrap();
            let naive = naive_monomorphisms(&rest, &h);
            prop_assert_eq!(r.monomorphism_count, naive.len());
            prop_assert_eq!(r.all_identity, naive.len() == 1 && naive[0].is_identity());
            for m in &r.non_identity {
                prop_assert!(m.is_monomorphism(&rest, &h));
                prop_assert!(naive.contains(m));
            }
            // the pair is recorded so the failure can be replayed by hand
            prop_assert_eq!(r.pair.len(), 2);
        }
    }
}
