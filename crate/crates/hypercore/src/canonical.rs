//! The explicit 10-vertex, 9-edge 5-graph and its named edges.
//!
//! Labels: the degree-2 vertex `z` is 0 and `v_i` is `i`.

use crate::edge::{Edge, Vertex};
use crate::graph::Hypergraph;

pub const Z: Vertex = 0;
pub const K: usize = 5;

/// `v_i` for `i` in 1..=9.
pub const fn v(i: Vertex) -> Vertex {
    i
}

/// The nine edges, in the row order of the intersection table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum H5Edge {
    R,
    G,
    A,
    E94,
    E15,
    E26,
    E37,
    E48,
    E59,
}

impl H5Edge {
    pub const ALL: [H5Edge; 9] = [
        H5Edge::R,
        H5Edge::G,
        H5Edge::A,
        H5Edge::E94,
        H5Edge::E15,
        H5Edge::E26,
        H5Edge::E37,
        H5Edge::E48,
        H5Edge::E59,
    ];

    pub fn ids(self) -> [Vertex; 5] {
        match self {
            H5Edge::R => [Z, 1, 3, 5, 8],
            H5Edge::G => [Z, 2, 4, 7, 9],
            H5Edge::A => [1, 4, 6, 8, 9],
            H5Edge::E94 => [9, 1, 2, 3, 4],
            H5Edge::E15 => [1, 2, 3, 4, 5],
            H5Edge::E26 => [2, 3, 4, 5, 6],
            H5Edge::E37 => [3, 4, 5, 6, 7],
            H5Edge::E48 => [4, 5, 6, 7, 8],
            H5Edge::E59 => [5, 6, 7, 8, 9],
        }
    }

    pub fn edge(self) -> Edge {
        Edge::new(&self.ids(), K).expect("named edges are 5-sets")
    }

    pub fn label(self) -> &'static str {
        match self {
            H5Edge::R => "e_r",
            H5Edge::G => "e_g",
            H5Edge::A => "e_a",
            H5Edge::E94 => "e_94",
            H5Edge::E15 => "e_15",
            H5Edge::E26 => "e_26",
            H5Edge::E37 => "e_37",
            H5Edge::E48 => "e_48",
            H5Edge::E59 => "e_59",
        }
    }

    pub fn of(e: &Edge) -> Option<H5Edge> {
        H5Edge::ALL.into_iter().find(|n| n.edge() == *e)
    }
}

/// A target graph with its designated degree-2 vertex and the two edges
/// through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Designated {
    pub graph: Hypergraph,
    pub z: Vertex,
    pub r: Edge,
    pub g: Edge,
}

/// `canonical_h5`
pub fn canonical_h5() -> Designated {
    let graph = Hypergraph::from_edges(K, H5Edge::ALL.map(H5Edge::edge))
        .expect("canonical edges are well formed");
    Designated {
        graph,
        z: Z,
        r: H5Edge::R.edge(),
        g: H5Edge::G.edge(),
    }
}

/// The two length-5 tight paths as vertex orders.
pub const TP1_ORDER: [Vertex; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];
pub const TP2_ORDER: [Vertex; 9] = [9, 1, 2, 3, 4, 5, 6, 7, 8];
