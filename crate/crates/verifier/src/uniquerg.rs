//! Uniqueness of the completing pair: `H - z` plus one outside vertex `x`
//! has exactly one pair of edges through `x` that completes it to `H`.

use std::collections::BTreeSet;

use hypercore::{is_isomorphic, make_edge, Edge, Hypergraph, Vertex};
use serde::{Deserialize, Serialize};

use crate::properties::r_and_g;
use crate::report::{Check, PropertyReport, Witness};

/// Order in which candidate edges are generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CandidateOrder {
    /// (k-1)-subsets in lexicographic order of ascending vertex ids.
    Lexicographic,
    /// Vertices listed in descending order, subsets generated in reverse.
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CompletingPairs {
    pub x: Vertex,
    /// Unordered pairs of distinct candidate edges examined.
    pub candidates: usize,
    pub pairs: BTreeSet<(Edge, Edge)>,
}

fn subsets(items: &[Vertex], size: usize, out: &mut Vec<Vec<Vertex>>) {
    fn go(items: &[Vertex], size: usize, cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in 0..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(&items[i + 1..], size, cur, out);
            cur.pop();
        }
    }
    go(items, size, &mut Vec::new(), out);
}

/// Every unordered pair `{r', g'}` of k-sets through a fresh vertex `x`
/// with `(H - z) + r' + g'` isomorphic to `H`.
pub fn completing_pairs(h: &Hypergraph, z: Vertex, order: CandidateOrder) -> CompletingPairs {
    let k = h.k();
    let minus = h.remove_vertex(z).expect("z is a vertex");
    let x = h.vertices().iter().max().map_or(0, |m| m + 1);
    let mut base: Vec<Vertex> = minus.vertices().iter().copied().collect();
    if order == CandidateOrder::Reversed {
        base.reverse();
    }
    let mut subs = Vec::new();
    subsets(&base, k - 1, &mut subs);
    if order == CandidateOrder::Reversed {
        subs.reverse();
    }
    let cands: Vec<Edge> = subs
        .into_iter()
        .map(|mut s| {
            s.push(x);
            make_edge(&s, k).expect("distinct ids")
        })
        .collect();

    let target_degrees: Vec<usize> = sorted_degrees(h);
    let mut pairs = BTreeSet::new();
    let mut candidates = 0;
    for i in 0..cands.len() {
        for j in i + 1..cands.len() {
            candidates += 1;
            let mut g = minus.clone();
            g.add_edge(cands[i].clone()).expect("k-set");
            g.add_edge(cands[j].clone()).expect("k-set");
            if sorted_degrees(&g) != target_degrees {
                continue;
            }
            if is_isomorphic(&g, h).is_some() {
                let (a, b) = (cands[i].clone(), cands[j].clone());
                pairs.insert(if a < b { (a, b) } else { (b, a) });
            }
        }
    }
    CompletingPairs {
        x,
        candidates,
        pairs,
    }
}

fn sorted_degrees(h: &Hypergraph) -> Vec<usize> {
    let mut d: Vec<usize> = h.degrees().into_values().collect();
    d.sort_unstable();
    d
}

/// `check_uniquerg`: holds iff exactly one completing pair exists, it is
/// `{r - z + x, g - z + x}`, and a second generation order finds the same set.
pub fn check_uniquerg(h: &Hypergraph, z: Vertex) -> (PropertyReport, CompletingPairs) {
    let mut found = None;
    let report = PropertyReport::timed(Check::UniqueRg, || {
        let Some((r, g)) = r_and_g(h, z) else {
            return (false, Some(Witness::new("r and g are undefined")));
        };
        let a = completing_pairs(h, z, CandidateOrder::Lexicographic);
        let b = completing_pairs(h, z, CandidateOrder::Reversed);
        let x = a.x;
        let lift = |e: &Edge| e.replace(z, x).expect("z in e, x fresh");
        let (r2, g2) = (lift(&r), lift(&g));
        let expected = if r2 < g2 { (r2, g2) } else { (g2, r2) };
        let all: Vec<&Edge> = a.pairs.iter().flat_map(|(p, q)| [p, q]).collect();
        let holds = a.pairs == b.pairs
            && a.candidates == b.candidates
            && a.pairs.len() == 1
            && a.pairs.contains(&expected);
        let w = Witness::new(format!(
            "{} pair(s) among {} candidates; second order agrees: {}",
            a.pairs.len(),
            a.candidates,
            a.pairs == b.pairs
        ))
        .with_vertices([x])
        .with_edges(all);
        found = Some(a);
        (holds, Some(w))
    });
    let found = found.unwrap_or(CompletingPairs {
        x: 0,
        candidates: 0,
        pairs: BTreeSet::new(),
    });
    (report, found)
}
