use std::collections::BTreeMap;

use crate::edge::{Edge, Vertex};
use crate::graph::Hypergraph;

/// Vertices `u_1..u_t` with edges `e_i = {u_i, ..., u_{i+k-1}}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TightPath {
    pub vertex_order: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl TightPath {
    /// Builds the path on `order` for uniformity `k`. `None` if `order` has
    /// fewer than `k` vertices or repeats one.
    pub fn from_order(order: &[Vertex], k: usize) -> Option<TightPath> {
        if order.len() < k {
            return None;
        }
        let edges = order
            .windows(k)
            .map(|w| Edge::from_set(w).ok())
            .collect::<Option<Vec<_>>>()?;
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(TightPath {
            vertex_order: order.to_vec(),
            edges,
        })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_in(&self, h: &Hypergraph) -> bool {
        self.edges.iter().all(|e| h.contains_edge(e))
    }

    pub fn reversed(&self) -> TightPath {
        let mut vertex_order = self.vertex_order.clone();
        vertex_order.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        TightPath {
            vertex_order,
            edges,
        }
    }
}

/// All tight paths with `length` edges in `h`, one per edge sequence up to
/// reversal. Each path is oriented so that its edge sequence is the
/// lexicographically smaller of the two directions; among the vertex orders
/// realising that sequence the smallest is kept.
pub fn tight_paths(h: &Hypergraph, length: usize) -> Vec<TightPath> {
    let k = h.k();
    if length == 0 {
        return Vec::new();
    }
    let t = length + k - 1;
    let mut found: BTreeMap<Vec<Edge>, Vec<Vertex>> = BTreeMap::new();
    let mut order = Vec::with_capacity(t);
    for e in h.edges() {
        for_each_permutation(e.vertices(), &mut |perm| {
            order.clear();
            order.extend_from_slice(perm);
            extend(h, t, &mut order, &mut |done| record(&mut found, done, k));
        });
    }
    found
        .into_iter()
        .map(|(edges, vertex_order)| TightPath {
            vertex_order,
            edges,
        })
        .collect()
}

fn record(found: &mut BTreeMap<Vec<Edge>, Vec<Vertex>>, order: &[Vertex], k: usize) {
    let path = TightPath::from_order(order, k).expect("extension keeps vertices distinct");
    let rev = path.reversed();
    let canon = if rev.edges < path.edges { rev } else { path };
    found
        .entry(canon.edges)
        .and_modify(|best| {
            if canon.vertex_order < *best {
                *best = canon.vertex_order.clone();
            }
        })
        .or_insert(canon.vertex_order);
}

fn extend(h: &Hypergraph, t: usize, order: &mut Vec<Vertex>, done: &mut dyn FnMut(&[Vertex])) {
    if order.len() == t {
        done(order);
        return;
    }
    let k = h.k();
    let tail: Vec<Vertex> = order[order.len() + 1 - k..].to_vec();
    let mut next: Vec<Vertex> = h
        .incident_edges(tail[0])
        .filter(|e| tail.iter().all(|&v| e.contains(v)))
        .flat_map(|e| e.vertices().iter().copied().filter(|v| !tail.contains(v)))
        .filter(|v| !order.contains(v))
        .collect();
    next.sort_unstable();
    next.dedup();
    for w in next {
        order.push(w);
        extend(h, t, order, done);
        order.pop();
    }
}

/// Heap's algorithm over a small slice.
pub(crate) fn for_each_permutation(items: &[Vertex], f: &mut dyn FnMut(&[Vertex])) {
    let mut a = items.to_vec();
    let n = a.len();
    let mut c = vec![0usize; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
