//! Intermediate conclusions of the rigidity argument, checked on the
//! enumerated monomorphism sets of every two-edge deletion. Vertex and edge
//! names follow the canonical labelling (`z = 0`, `v_i = i`).

use hypercore::canonical::{TP1_ORDER, TP2_ORDER};
use hypercore::{enumerate_monomorphisms, Edge, H5Edge, Hypergraph, TightPath, Vertex, VertexMap};
use rayon::prelude::*;

use crate::properties::edge_pairs;
use crate::report::{Check, PropertyReport, Witness};

/// Monomorphisms of `H - {e, f}` into `H`.
#[derive(Clone, Debug)]
pub struct PairMaps {
    pub e: Edge,
    pub f: Edge,
    pub rest: Hypergraph,
    pub maps: Vec<VertexMap>,
}

pub fn pair_maps(h: &Hypergraph) -> Vec<PairMaps> {
    edge_pairs(h)
        .into_par_iter()
        .map(|(e, f)| {
            let rest = h.remove_edges([&e, &f]).expect("edges of h");
            let maps = enumerate_monomorphisms(&rest, h);
            PairMaps { e, f, rest, maps }
        })
        .collect()
}

/// A permutation of `0..=9` from cycles; unlisted vertices are fixed.
fn from_cycles(cycles: &[&[Vertex]]) -> VertexMap {
    let mut img: Vec<Vertex> = (0..=9).collect();
    for c in cycles {
        for (i, &a) in c.iter().enumerate() {
            img[a as usize] = c[(i + 1) % c.len()];
        }
    }
    VertexMap::new(img.into_iter().enumerate().map(|(v, w)| (v as Vertex, w))).expect("bijection")
}

/// The identity and the five other permutations a monomorphism may be when
/// a length-5 tight path survives.
pub fn lemma47_permutations() -> Vec<VertexMap> {
    vec![
        from_cycles(&[]),
        from_cycles(&[&[9, 1, 2, 3, 4, 5, 6, 7, 8]]),
        from_cycles(&[&[1, 9, 8, 7, 6, 5, 4, 3, 2]]),
        from_cycles(&[&[9, 8], &[1, 7], &[2, 6], &[3, 5]]),
        from_cycles(&[&[1, 8], &[2, 7], &[3, 6], &[4, 5]]),
        from_cycles(&[&[1, 9], &[2, 8], &[3, 7], &[4, 6]]),
    ]
}

fn agrees_on_domain(m: &VertexMap, p: &VertexMap) -> bool {
    m.iter().all(|(v, w)| p.get(v) == Some(w))
}

fn pair_label(p: &PairMaps) -> String {
    let name = |e: &Edge| H5Edge::of(e).map_or_else(|| e.to_string(), |n| n.label().to_string());
    format!("{{{}, {}}}", name(&p.e), name(&p.f))
}

fn scan(
    check: Check,
    pairs: &[PairMaps],
    applies: impl Fn(&PairMaps) -> bool,
    ok: impl Fn(&PairMaps, &VertexMap) -> bool,
) -> PropertyReport {
    PropertyReport::timed(check, || {
        let mut used = 0;
        for p in pairs.iter().filter(|p| applies(p)) {
            used += 1;
            if let Some(m) = p.maps.iter().find(|m| !ok(p, m)) {
                let w = Witness::new(format!("pair {}", pair_label(p)))
                    .with_edges([&p.e, &p.f])
                    .with_map(m)
                    .with_graph(&p.rest, None);
                return (false, Some(w));
            }
        }
        (true, Some(Witness::new(format!("{used} pairs apply"))))
    })
}

/// Every monomorphism fixes `z` whenever `z` is in its domain.
pub fn check_z_fixed(pairs: &[PairMaps], z: Vertex) -> PropertyReport {
    scan(
        Check::ZFixed,
        pairs,
        |p| p.rest.contains_vertex(z),
        |_, m| m.get(z) == Some(z),
    )
}

/// A monomorphism mapping `r` to `r` and `g` to `g` is the identity.
pub fn check_rg_fixed(pairs: &[PairMaps], r: &Edge, g: &Edge) -> PropertyReport {
    scan(
        Check::RgFixed,
        pairs,
        |p| p.rest.contains_edge(r) && p.rest.contains_edge(g),
        |_, m| {
            let fixes_rg =
                m.apply_edge(r).as_ref() == Some(r) && m.apply_edge(g).as_ref() == Some(g);
            !fixes_rg || m.is_identity()
        },
    )
}

/// With `e_94` and `e_59` both present, `v9` is fixed.
pub fn check_v9_fixed(pairs: &[PairMaps]) -> PropertyReport {
    let (e94, e59) = (H5Edge::E94.edge(), H5Edge::E59.edge());
    scan(
        Check::V9Fixed,
        pairs,
        |p| p.rest.contains_edge(&e94) && p.rest.contains_edge(&e59),
        |_, m| m.get(9) == Some(9),
    )
}

/// With a length-5 tight path left intact, every monomorphism is one of
/// [`lemma47_permutations`].
pub fn check_tight_path_permutations(pairs: &[PairMaps]) -> PropertyReport {
    let paths = [
        TightPath::from_order(&TP1_ORDER, 5).expect("nine distinct vertices"),
        TightPath::from_order(&TP2_ORDER, 5).expect("nine distinct vertices"),
    ];
    let allowed = lemma47_permutations();
    scan(
        Check::TightPathPermutations,
        pairs,
        |p| paths.iter().any(|tp| tp.is_in(&p.rest)),
        |_, m| allowed.iter().any(|a| agrees_on_domain(m, a)),
    )
}

/// All four, on the canonical graph.
pub fn rigidity_chain(h: &Hypergraph, z: Vertex, r: &Edge, g: &Edge) -> Vec<PropertyReport> {
    let pairs = pair_maps(h);
    vec![
        check_z_fixed(&pairs, z),
        check_rg_fixed(&pairs, r, g),
        check_v9_fixed(&pairs),
        check_tight_path_permutations(&pairs),
    ]
}
