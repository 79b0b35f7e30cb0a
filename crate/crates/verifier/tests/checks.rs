use std::collections::BTreeMap;

use hypercore::oracle::naive_monomorphisms;
use hypercore::{canonical_h5, Edge, H5Edge, Hypergraph, Vertex};
use verifier::*;

fn e(ids: &[Vertex]) -> Edge {
    Edge::from_set(ids).unwrap()
}

fn h5() -> Hypergraph {
    canonical_h5().graph
}

fn graph(k: usize, edges: &[&[Vertex]]) -> Hypergraph {
    Hypergraph::from_edges(k, edges.iter().map(|ids| e(ids))).unwrap()
}

/// Degrees counted straight off the edge list.
fn naive_degrees(edges: &[Edge]) -> BTreeMap<Vertex, usize> {
    let mut d = BTreeMap::new();
    for x in edges {
        for &v in x.vertices() {
            *d.entry(v).or_insert(0) += 1;
        }
    }
    d
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn h5_without(n: H5Edge) -> Hypergraph {
    h5().remove_edges([&n.edge()]).unwrap()
}

fn k5_on_6() -> Hypergraph {
    let mut es = Vec::new();
    for skip in 0..6 {
        let ids: Vec<Vertex> = (0..6).filter(|&v| v != skip).collect();
        es.push(e(&ids));
    }
    Hypergraph::from_edges(5, es).unwrap()
}

#[test]
fn property_i_examples() {
    let r = check_property_i(&h5(), 0);
    assert!(r.holds);
    let w = r.witness.unwrap();
    assert_eq!(w.edges, vec!["0 1 3 5 8", "0 2 4 7 9"]);

    let r = check_property_i(&h5(), 4);
    assert!(!r.holds);
    assert!(r.witness.unwrap().detail.contains("degree of 4 is 7"));

    let single = graph(5, &[&[0, 1, 2, 3, 4]]);
    assert!(!check_property_i(&single, 2).holds);
}

#[test]
fn property_ii_examples() {
    assert!(check_property_ii(&h5(), 0).holds);

    // without e_a: recompute both conditions from the edge list
    let g = h5_without(H5Edge::A);
    let all: Vec<Edge> = g.edges().iter().cloned().collect();
    let minus: Vec<Edge> = all.iter().filter(|x| !x.contains(0)).cloned().collect();
    let d_h = naive_degrees(&all);
    let d_minus = naive_degrees(&minus);
    let low_h: Vec<Vertex> = d_h
        .iter()
        .filter(|&(&v, &d)| v != 0 && d < 4)
        .map(|(&v, _)| v)
        .collect();
    let low_minus: Vec<Vertex> = (1..=9)
        .filter(|v| d_minus.get(v).copied().unwrap_or(0) < 3)
        .collect();
    assert_eq!(low_h, vec![1, 8, 9]);
    assert_eq!(low_minus, vec![1, 8, 9]);
    let r = check_property_ii(&g, 0);
    assert!(!r.holds);
    let mut flagged = r.witness.unwrap().vertices;
    flagged.sort_unstable();
    flagged.dedup();
    assert_eq!(flagged, vec![1, 8, 9]);

    let disjoint = graph(5, &[&[0, 1, 2, 3, 4], &[5, 6, 7, 8, 9]]);
    assert!(!check_property_ii(&disjoint, 0).holds);
}

#[test]
fn property_iv_on_h5_and_a_symmetric_graph() {
    let (r, pairs) = check_property_iv(&h5());
    assert!(r.holds);
    assert_eq!(pairs.len(), 36);
    assert!(pairs
        .iter()
        .all(|p| p.monomorphism_count == 1 && p.all_identity));

    let (r, pairs) = check_property_iv(&k5_on_6());
    assert!(!r.holds);
    let w = r.witness.unwrap();
    let m = w.map.unwrap();
    assert!(!m.is_identity());
    let pair: Vec<Edge> = w.edges.iter().map(|s| parse_edge(s)).collect();
    let rest = k5_on_6().remove_edges(&pair).unwrap();
    assert!(m.is_monomorphism(&rest, &k5_on_6()));
    assert!(pairs.iter().all(|p| p.monomorphism_count > 1));
}

fn parse_edge(s: &str) -> Edge {
    let ids: Vec<Vertex> = s.split(' ').map(|w| w.parse().unwrap()).collect();
    e(&ids)
}

#[test]
fn r_g_pair_count_matches_naive_oracle() {
    let h = h5();
    let rest = h
        .remove_edges([&H5Edge::R.edge(), &H5Edge::G.edge()])
        .unwrap();
    let naive = naive_monomorphisms(&rest, &h);
    assert_eq!(naive.len(), 1);
    let (_, pairs) = check_property_iv_pairs(&h, &[(H5Edge::R.edge(), H5Edge::G.edge())]);
    assert_eq!(pairs[0].monomorphism_count, 1);
    // z is isolated once r and g go, so it leaves the domain
    assert!(!rest.contains_vertex(0));
}

#[test]
fn property_v_examples() {
    assert!(check_property_v(&h5(), 0).holds);

    let mut g = h5();
    let far = e(&[2, 4, 6, 7, 9]);
    g.add_edge(far.clone()).unwrap();
    let r = check_property_v(&g, 0);
    assert!(!r.holds);
    assert_eq!(r.witness.unwrap().edges[0], "2 4 6 7 9");

    let rg = graph(5, &[&[0, 1, 3, 5, 8], &[0, 2, 4, 7, 9]]);
    assert!(check_property_v(&rg, 0).holds);
}

#[test]
fn property_vi_examples() {
    let r = check_property_vi(&h5(), 0);
    assert!(r.holds);
    assert_eq!(r.witness.unwrap().vertices, vec![6]);

    let rg = graph(5, &[&[0, 1, 3, 5, 8], &[0, 2, 4, 7, 9]]);
    assert!(check_property_vi(&rg, 0).holds);

    let four_out = graph(
        5,
        &[&[0, 1, 2, 3, 4], &[0, 5, 6, 7, 8], &[1, 10, 11, 12, 13]],
    );
    let r = check_property_vi(&four_out, 0);
    assert!(!r.holds);
    assert_eq!(r.witness.unwrap().vertices, vec![10, 11, 12, 13]);
}

#[test]
fn property_iii_on_h5() {
    let (r, leaves) = check_property_iii_constructive(&h5(), 0, &strategies::Lemma41Builder::new());
    assert!(r.holds, "{:?}", r.witness);
    let played: Vec<&CoverLeaf> = leaves.iter().filter(|l| !l.skipped).collect();
    assert!(played.iter().all(|l| l.sp_moves == 7 && l.isomorphic));

    // 6th move v1 v2 v3 v4 v9 sends the builder down the first branch
    let trigger = leaves
        .iter()
        .find(|l| l.line.starts_with("Named([1, 2, 3, 4, 9]) Fresh"))
        .unwrap();
    assert_eq!(trigger.built[5], [1, 6, 7, 8, 9]);
    // fresh edges only: the other branch
    let quiet = leaves.iter().find(|l| l.line == "Fresh Fresh").unwrap();
    assert_eq!(quiet.built[5..], [[1, 2, 3, 4, 9], [1, 4, 6, 8, 9]]);

    let (r, _) = check_property_iii_constructive(
        &h5_without(H5Edge::A),
        0,
        &strategies::Lemma41Builder::new(),
    );
    assert!(!r.holds);
}

#[test]
fn cover_has_every_pair_of_relevant_moves() {
    let cover = lemma41_cover();
    // 8 choices on each move; a named or stray edge cannot be taken twice
    assert_eq!(cover.len(), 8 * 8 - 7);
}

#[test]
fn missing_one_edge_on_h5() {
    let (r, per_edge) = check_missing1edge(&h5());
    assert!(r.holds);
    assert_eq!(per_edge.len(), 9);
    assert!(per_edge.iter().all(|p| p.monomorphism_count == 1));

    let h = h5();
    let naive = naive_monomorphisms(&h5_without(H5Edge::A), &h);
    assert_eq!(naive.len(), 1);
    assert!(naive[0].is_identity());

    let (r, _) = check_missing1edge(&k5_on_6());
    assert!(!r.holds);
}

#[test]
fn unique_completing_pair() {
    let (r, found) = check_uniquerg(&h5(), 0);
    assert!(r.holds, "{:?}", r.witness);
    assert_eq!(found.x, 10);
    let pair: Vec<_> = found.pairs.iter().cloned().collect();
    assert_eq!(pair, vec![(e(&[1, 3, 5, 8, 10]), e(&[2, 4, 7, 9, 10]))]);
    // candidates: 4-subsets of the 9 vertices of H - z, plus x; unordered pairs
    let c = binomial(9, 4);
    assert_eq!(c, 126);
    assert_eq!(found.candidates, binomial(c, 2));
    assert_eq!(found.candidates, 7875);
}

#[test]
fn candidate_orders_agree() {
    let a = completing_pairs(&h5(), 0, CandidateOrder::Lexicographic);
    let b = completing_pairs(&h5(), 0, CandidateOrder::Reversed);
    assert_eq!(a, b);
}

#[test]
fn observation_facts() {
    let (r, facts) = check_observation42(&h5(), 0);
    assert!(r.holds);
    assert_eq!(facts[0].witness.vertices, vec![6]);
    assert_eq!(facts[1].witness.edges, vec!["1 2 3 4 5"]);
    assert_eq!(facts[2].witness.edges, vec!["1 2 3 4 9"]);
    assert_eq!(facts[3].witness.edges.len(), 10);

    // fact (2) profile read off directly
    let (ra, ga) = (H5Edge::R.edge(), H5Edge::G.edge());
    let e15 = H5Edge::E15.edge();
    assert_eq!(
        (e15.intersection_size(&ra), e15.intersection_size(&ga)),
        (3, 2)
    );

    // fact (5) for (v4, v5): scan the nine edges by hand
    let sep: Vec<H5Edge> = H5Edge::ALL
        .into_iter()
        .filter(|n| n.ids().contains(&4) != n.ids().contains(&5))
        .collect();
    assert_eq!(
        sep,
        vec![H5Edge::R, H5Edge::G, H5Edge::A, H5Edge::E94, H5Edge::E59]
    );
    let found = verifier::observation::separating_edges(&h5(), 4, 5);
    let names: Vec<H5Edge> = found.iter().map(|x| H5Edge::of(x).unwrap()).collect();
    let mut sorted = sep.clone();
    sorted.sort();
    let mut names_sorted = names;
    names_sorted.sort();
    assert_eq!(names_sorted, sorted);
}

#[test]
fn rigidity_chain_holds_on_h5() {
    let d = canonical_h5();
    for r in verifier::rigidity::rigidity_chain(&d.graph, d.z, &d.r, &d.g) {
        assert!(r.holds, "{:?} {:?}", r.property, r.witness);
    }
}

#[test]
fn listed_permutations_keep_a_length_5_tight_path() {
    use hypercore::canonical::{TP1_ORDER, TP2_ORDER};
    use hypercore::TightPath;
    let tp1 = TightPath::from_order(&TP1_ORDER, 5).unwrap();
    let tp2 = TightPath::from_order(&TP2_ORDER, 5).unwrap();
    let perms = verifier::rigidity::lemma47_permutations();
    assert_eq!(perms.len(), 6);
    let as_set = |es: &[Edge]| {
        es.iter()
            .cloned()
            .collect::<std::collections::BTreeSet<_>>()
    };
    let paths = [as_set(&tp1.edges), as_set(&tp2.edges)];
    for p in &perms {
        assert_eq!(p.get(0), Some(0));
        let moved = |tp: &TightPath| {
            let img: Vec<Edge> = tp.edges.iter().map(|x| p.apply_edge(x).unwrap()).collect();
            paths.contains(&as_set(&img))
        };
        assert!(moved(&tp1) || moved(&tp2), "{p:?}");
    }
}

#[test]
fn full_report_on_h5() {
    let rep = verify_all(&h5(), 0);
    assert!(rep.draw_sufficient);
    assert!(rep.supporting.iter().all(|r| r.holds));
    assert_eq!(rep.rigidity.len(), 36);
    let back: FullReport = serde_json::from_str(&rep.to_json()).unwrap();
    assert_eq!(back.properties.len(), 6);
    assert!(rep.to_text().contains("verdict: draw-sufficient"));
}

#[test]
fn full_report_without_e_a() {
    let g = h5_without(H5Edge::A);
    let rep = verify_all(&g, 0);
    let holds: Vec<bool> = rep.properties.iter().map(|p| p.holds).collect();
    // (i) z keeps r and g; (ii) v1, v8, v9 drop to degree 3; (iii) H - z now
    // has six edges; (v) and (vi) only shrink the edge set
    assert_eq!(&holds[..3], &[true, false, false]);
    assert_eq!(&holds[4..], &[true, true]);
    assert!(!rep.draw_sufficient);
    let failing: Vec<&RigidityResult> = rep.rigidity.iter().filter(|p| !p.all_identity).collect();
    assert_eq!(rep.properties[3].holds, failing.is_empty());
    for (i, p) in failing.iter().enumerate() {
        let pair: Vec<Edge> = p.pair.iter().map(|s| parse_edge(s)).collect();
        let rest = g.remove_edges(&pair).unwrap();
        assert!(p.non_identity.iter().all(|m| m.is_monomorphism(&rest, &g)));
        if i == 0 {
            assert_eq!(naive_monomorphisms(&rest, &g).len(), p.monomorphism_count);
        }
    }
}

#[test]
fn complete_graph_fails_property_i() {
    let rep = verify_all(&k5_on_6(), 0);
    assert!(!rep.properties[0].holds);
    assert!(!rep.draw_sufficient);
}

#[test]
fn restricted_sweep_is_partial() {
    let opts = VerifyOptions {
        pairs: Some(vec![(H5Edge::R.edge(), H5Edge::A.edge())]),
    };
    let rep = verify_with(&h5(), 0, &opts);
    assert!(rep.partial);
    assert!(!rep.draw_sufficient);
    assert_eq!(rep.rigidity.len(), 1);
}
