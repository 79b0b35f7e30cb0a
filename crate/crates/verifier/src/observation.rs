//! The five structural facts about `H` used by the rigidity argument.

use hypercore::{tight_paths, Edge, Hypergraph, Vertex};
use serde::{Deserialize, Serialize};

use crate::properties::r_and_g;
use crate::report::{Check, PropertyReport, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FactResult {
    /// 1 to 5.
    pub fact: u8,
    pub holds: bool,
    pub witness: Witness,
}

fn edges_with_profile(h: &Hypergraph, a: &Edge, b: &Edge, pa: usize, pb: usize) -> Vec<Edge> {
    h.edges()
        .iter()
        .filter(|e| e.intersection_size(a) == pa && e.intersection_size(b) == pb)
        .cloned()
        .collect()
}

/// Edges containing exactly one of `u`, `v`.
pub fn separating_edges(h: &Hypergraph, u: Vertex, v: Vertex) -> Vec<Edge> {
    h.edges()
        .iter()
        .filter(|e| e.contains(u) != e.contains(v))
        .cloned()
        .collect()
}

pub fn observation42_facts(h: &Hypergraph, z: Vertex) -> Vec<FactResult> {
    let Some((r, g)) = r_and_g(h, z) else {
        return (1..=5)
            .map(|fact| FactResult {
                fact,
                holds: false,
                witness: Witness::new("r and g are undefined"),
            })
            .collect();
    };
    let mut out = Vec::new();

    let outside: Vec<Vertex> = h
        .vertices()
        .iter()
        .copied()
        .filter(|&v| !r.contains(v) && !g.contains(v))
        .collect();
    let common: Vec<Vertex> = r
        .vertices()
        .iter()
        .copied()
        .filter(|&v| g.contains(v))
        .collect();
    out.push(FactResult {
        fact: 1,
        holds: outside.len() == 1 && common == [z],
        witness: Witness::new(format!(
            "outside r and g: {outside:?}; r and g share {common:?}"
        ))
        .with_vertices(outside.clone()),
    });

    let k = h.k();
    let (hi, lo) = (3.min(k), 2.min(k));
    for (fact, a, b) in [(2, &r, &g), (3, &g, &r)] {
        let found = edges_with_profile(h, a, b, hi, lo);
        out.push(FactResult {
            fact,
            holds: found.len() == 1,
            witness: Witness::new(format!("{} edge(s) with profile ({hi}, {lo})", found.len()))
                .with_edges(&found),
        });
    }

    let paths = tight_paths(h, 5);
    let path_edges: Vec<&Edge> = paths.iter().flat_map(|p| &p.edges).collect();
    out.push(FactResult {
        fact: 4,
        holds: paths.len() == 2,
        witness: Witness::new(format!(
            "{} tight path(s) of length 5: {:?}",
            paths.len(),
            paths.iter().map(|p| &p.vertex_order).collect::<Vec<_>>()
        ))
        .with_edges(path_edges),
    });

    let vs: Vec<Vertex> = h.vertices().iter().copied().collect();
    let mut worst: Option<(Vertex, Vertex, Vec<Edge>)> = None;
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            let sep = separating_edges(h, u, v);
            if worst.as_ref().is_none_or(|w| sep.len() < w.2.len()) {
                worst = Some((u, v, sep));
            }
        }
    }
    let (holds, witness) = match worst {
        None => (true, Witness::new("fewer than two vertices")),
        Some((u, v, sep)) => (
            sep.len() >= 3,
            Witness::new(format!(
                "fewest separating edges: {} for ({u}, {v})",
                sep.len()
            ))
            .with_vertices([u, v])
            .with_edges(&sep),
        ),
    };
    out.push(FactResult {
        fact: 5,
        holds,
        witness,
    });
    out
}

/// `check_observation42`: all five facts.
pub fn check_observation42(h: &Hypergraph, z: Vertex) -> (PropertyReport, Vec<FactResult>) {
    let mut facts = Vec::new();
    let report = PropertyReport::timed(Check::Observation42, || {
        facts = observation42_facts(h, z);
        match facts.iter().find(|f| !f.holds) {
            None => (true, None),
            Some(f) => {
                let mut w = f.witness.clone();
                w.detail = format!("fact ({}): {}", f.fact, w.detail);
                (false, Some(w))
            }
        }
    });
    (report, facts)
}
