//! Properties (i), (ii), (iv), (v), (vi) and the single-edge rigidity fact.

use std::time::Instant;

use hypercore::{enumerate_monomorphisms, Edge, Hypergraph, Vertex};
use rayon::prelude::*;

use crate::report::{Check, PropertyReport, RigidityResult, Witness};

/// The edges through `z`, when there are exactly two.
pub fn r_and_g(h: &Hypergraph, z: Vertex) -> Option<(Edge, Edge)> {
    let through: Vec<&Edge> = h.incident_edges(z).collect();
    match through[..] {
        [r, g] => Some((r.clone(), g.clone())),
        _ => None,
    }
}

fn missing_z(h: &Hypergraph, z: Vertex) -> Option<Witness> {
    (!h.contains_vertex(z))
        .then(|| Witness::new(format!("{z} is not a vertex")).with_graph(h, Some(z)))
}

pub fn check_property_i(h: &Hypergraph, z: Vertex) -> PropertyReport {
    PropertyReport::timed(Check::I, || {
        if let Some(w) = missing_z(h, z) {
            return (false, Some(w));
        }
        let through: Vec<&Edge> = h.incident_edges(z).collect();
        let holds = through.len() == 2;
        let detail = if holds {
            format!("degree of {z} is 2; r, g are its edges")
        } else {
            format!("degree of {z} is {}", through.len())
        };
        let w = Witness::new(detail).with_vertices([z]).with_edges(through);
        (holds, Some(w))
    })
}

/// Both halves are checked as stated: min degree of `H - z` at least 3 and
/// every other vertex of degree at least 4 in `H`.
pub fn check_property_ii(h: &Hypergraph, z: Vertex) -> PropertyReport {
    PropertyReport::timed(Check::II, || {
        if let Some(w) = missing_z(h, z) {
            return (false, Some(w));
        }
        let minus = h.remove_vertex(z).expect("z is a vertex");
        let low_minus: Vec<(Vertex, usize)> = minus
            .degrees()
            .into_iter()
            .filter(|&(_, d)| d < 3)
            .collect();
        let low_h: Vec<(Vertex, usize)> = h
            .degrees()
            .into_iter()
            .filter(|&(v, d)| v != z && d < 4)
            .collect();
        if low_minus.is_empty() && low_h.is_empty() {
            return (true, None);
        }
        let mut parts = Vec::new();
        if !low_minus.is_empty() {
            parts.push(format!("degree < 3 in H - z: {low_minus:?}"));
        }
        if !low_h.is_empty() {
            parts.push(format!("degree < 4 in H: {low_h:?}"));
        }
        let vs = low_minus.iter().chain(&low_h).map(|&(v, _)| v);
        let w = Witness::new(parts.join("; "))
            .with_vertices(vs)
            .with_graph(h, Some(z));
        (false, Some(w))
    })
}

pub fn check_property_v(h: &Hypergraph, z: Vertex) -> PropertyReport {
    PropertyReport::timed(Check::V, || {
        let Some((r, g)) = r_and_g(h, z) else {
            return (false, Some(Witness::new("r and g are undefined")));
        };
        match h
            .edges()
            .iter()
            .find(|e| e.intersection_size(&r) == 0 || e.intersection_size(&g) == 0)
        {
            None => (true, None),
            Some(e) => {
                let w = Witness::new("edge misses r or g").with_edges([e, &r, &g]);
                (false, Some(w))
            }
        }
    })
}

pub fn check_property_vi(h: &Hypergraph, z: Vertex) -> PropertyReport {
    PropertyReport::timed(Check::VI, || {
        let Some((r, g)) = r_and_g(h, z) else {
            return (false, Some(Witness::new("r and g are undefined")));
        };
        let outside: Vec<Vertex> = h
            .vertices()
            .iter()
            .copied()
            .filter(|&v| !r.contains(v) && !g.contains(v))
            .collect();
        let holds = outside.len() + 1 < h.k();
        let w = Witness::new(format!(
            "{} vertices outside r and g, bound k - 1 = {}",
            outside.len(),
            h.k() - 1
        ))
        .with_vertices(outside);
        (holds, Some(w))
    })
}

/// Monomorphisms of `h` minus `removed` into `h`. The domain is the vertex
/// set spanned by the remaining edges.
pub fn rigidity(h: &Hypergraph, removed: &[&Edge]) -> RigidityResult {
    let t0 = Instant::now();
    let rest = h
        .remove_edges(removed.iter().copied())
        .expect("removed edges belong to h");
    let maps = enumerate_monomorphisms(&rest, h);
    let all_identity = maps.len() == 1 && maps[0].is_identity();
    RigidityResult {
        pair: removed
            .iter()
            .map(|e| hypercore::text::render_edge(e))
            .collect(),
        monomorphism_count: maps.len(),
        all_identity,
        non_identity: if all_identity { Vec::new() } else { maps },
        elapsed: t0.elapsed(),
    }
}

/// All unordered edge pairs, in edge order.
pub fn edge_pairs(h: &Hypergraph) -> Vec<(Edge, Edge)> {
    let es: Vec<&Edge> = h.edges().iter().collect();
    let mut out = Vec::new();
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            out.push((es[i].clone(), es[j].clone()));
        }
    }
    out
}

pub fn check_property_iv(h: &Hypergraph) -> (PropertyReport, Vec<RigidityResult>) {
    check_property_iv_pairs(h, &edge_pairs(h))
}

/// Property (iv) restricted to `pairs`.
pub fn check_property_iv_pairs(
    h: &Hypergraph,
    pairs: &[(Edge, Edge)],
) -> (PropertyReport, Vec<RigidityResult>) {
    let mut results = Vec::new();
    let report = PropertyReport::timed(Check::IV, || {
        if h.edge_count() < 2 {
            return (false, Some(Witness::new("fewer than two edges")));
        }
        results = pairs
            .par_iter()
            .map(|(e, f)| rigidity(h, &[e, f]))
            .collect();
        first_failure(h, &results)
    });
    (report, results)
}

/// `check_missing1edge`: every monomorphism of `h` minus one edge is the
/// identity.
pub fn check_missing1edge(h: &Hypergraph) -> (PropertyReport, Vec<RigidityResult>) {
    let mut results = Vec::new();
    let report = PropertyReport::timed(Check::MissingOneEdge, || {
        let es: Vec<&Edge> = h.edges().iter().collect();
        results = es.par_iter().map(|e| rigidity(h, &[e])).collect();
        first_failure(h, &results)
    });
    (report, results)
}

fn first_failure(h: &Hypergraph, results: &[RigidityResult]) -> (bool, Option<Witness>) {
    match results.iter().find(|r| !r.all_identity) {
        None => (true, None),
        Some(bad) => {
            let mut w = Witness::new(format!(
                "{} monomorphisms after deleting {}",
                bad.monomorphism_count,
                bad.pair.join(" | ")
            ))
            .with_graph(h, None);
            w.edges = bad.pair.clone();
            if let Some(m) = bad.non_identity.iter().find(|m| !m.is_identity()) {
                w = w.with_map(m);
            }
            (false, Some(w))
        }
    }
}
