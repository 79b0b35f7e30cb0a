//! Brute-force reference implementations.
//!
//! These enumerate every injection with no ordering heuristics and no
//! pruning, and exist only to cross-check [`crate::matcher`].

use crate::edge::Vertex;
use crate::graph::Hypergraph;
use crate::map::VertexMap;

/// Every injective map `V(pattern) -> V(host)` that sends each edge of
/// `pattern` to an edge of `host`, found by trying all injections.
pub fn naive_monomorphisms(pattern: &Hypergraph, host: &Hypergraph) -> Vec<VertexMap> {
    let mut out = Vec::new();
    if pattern.k() != host.k() {
        return out;
    }
    let from: Vec<Vertex> = pattern.vertices().iter().copied().collect();
    let to: Vec<Vertex> = host.vertices().iter().copied().collect();
    for_each_injection(from.len(), to.len(), &mut |assign| {
        let map =
            VertexMap::new(from.iter().zip(assign).map(|(&a, &b)| (a, to[b]))).expect("injection");
        let ok = pattern.edges().iter().all(|e| {
            map.apply_edge(e)
                .is_some_and(|img| host.contains_edge(&img))
        });
        if ok {
            out.push(map);
        }
    });
    out.sort();
    out
}

/// Naive isomorphism test: all bijections.
pub fn naive_is_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    a.k() == b.k()
        && a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && !naive_monomorphisms(a, b).is_empty()
}

/// Calls `f` with every injection `0..n -> 0..m`, as an index slice.
pub fn for_each_injection(n: usize, m: usize, f: &mut dyn FnMut(&[usize])) {
    if n > m {
        return;
    }
    let mut assign = Vec::with_capacity(n);
    let mut used = vec![false; m];
    rec(n, m, &mut assign, &mut used, f);
}

fn rec(
    n: usize,
    m: usize,
    assign: &mut Vec<usize>,
    used: &mut [bool],
    f: &mut dyn FnMut(&[usize]),
) {
    if assign.len() == n {
        f(assign);
        return;
    }
    for j in 0..m {
        if !used[j] {
            used[j] = true;
            assign.push(j);
            rec(n, m, assign, used, f);
            assign.pop();
            used[j] = false;
        }
    }
}
