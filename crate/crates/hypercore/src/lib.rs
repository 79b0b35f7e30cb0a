//! k-uniform hypergraphs and the search primitives the game engine and the
//! verifier are built on: degrees, intersections, tight paths, and
//! monomorphism / isomorphism enumeration.

pub mod canonical;
pub mod edge;
pub mod error;
pub mod graph;
pub mod map;
pub mod matcher;
pub mod oracle;
pub mod paths;
pub mod text;

pub use canonical::{canonical_h5, Designated, H5Edge};
pub use edge::{intersection_size, make_edge, Edge, Vertex};
pub use error::HyperError;
pub use graph::Hypergraph;
pub use map::VertexMap;
pub use matcher::{
    enumerate_embeddings, enumerate_monomorphisms, is_isomorphic, Host, Pattern, Restriction,
};
pub use paths::{tight_paths, TightPath};
pub use text::GraphFile;

/// `degree`
pub fn degree(h: &Hypergraph, v: Vertex) -> Result<usize, HyperError> {
    h.degree(v)
}

/// `remove_vertex`
pub fn remove_vertex(h: &Hypergraph, v: Vertex) -> Result<Hypergraph, HyperError> {
    h.remove_vertex(v)
}

/// `remove_edges`
pub fn remove_edges<'a, I>(h: &Hypergraph, es: I) -> Result<Hypergraph, HyperError>
where
    I: IntoIterator<Item = &'a Edge>,
{
    h.remove_edges(es)
}
