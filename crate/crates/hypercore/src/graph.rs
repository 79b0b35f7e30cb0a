use std::collections::{BTreeMap, BTreeSet};

use crate::edge::{Edge, Vertex};
use crate::error::HyperError;
use crate::map::VertexMap;

/// A finite k-uniform hypergraph.
///
/// Edges are kept in an ordered set so iteration order is reproducible.
/// Isolated vertices exist only when added explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    k: usize,
    vertices: BTreeSet<Vertex>,
    edges: BTreeSet<Edge>,
}

impl Hypergraph {
    pub fn new(k: usize) -> Result<Hypergraph, HyperError> {
        if k < 2 {
            return Err(HyperError::BadUniformity(k));
        }
        Ok(Hypergraph {
            k,
            vertices: BTreeSet::new(),
            edges: BTreeSet::new(),
        })
    }

    /// The hypergraph spanned by `edges`: its vertex set is their union.
    pub fn from_edges<I>(k: usize, edges: I) -> Result<Hypergraph, HyperError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut h = Hypergraph::new(k)?;
        for e in edges {
            h.add_edge(e)?;
        }
        Ok(h)
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.vertices.insert(v);
    }

    /// Inserts `e`, adding its vertices. Returns whether it was new.
    pub fn add_edge(&mut self, e: Edge) -> Result<bool, HyperError> {
        if e.len() != self.k {
            return Err(HyperError::WrongArity {
                expected: self.k,
                found: e.len(),
            });
        }
        self.vertices.extend(e.vertices().iter().copied());
        Ok(self.edges.insert(e))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, HyperError> {
        if !self.vertices.contains(&v) {
            return Err(HyperError::UnknownVertex(v));
        }
        Ok(self.edges.iter().filter(|e| e.contains(v)).count())
    }

    /// Degree of every vertex, isolated ones included.
    pub fn degrees(&self) -> BTreeMap<Vertex, usize> {
        let mut d: BTreeMap<Vertex, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for e in &self.edges {
            for v in e.vertices() {
                *d.entry(*v).or_default() += 1;
            }
        }
        d
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.degrees().into_values().min()
    }

    /// Edges containing `v`, in edge order.
    pub fn incident_edges(&self, v: Vertex) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.contains(v))
    }

    /// Deletes `v` together with every edge through it.
    pub fn remove_vertex(&self, v: Vertex) -> Result<Hypergraph, HyperError> {
        if !self.vertices.contains(&v) {
            return Err(HyperError::UnknownVertex(v));
        }
        let mut vertices = self.vertices.clone();
        vertices.remove(&v);
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.contains(v))
            .cloned()
            .collect();
        Ok(Hypergraph {
            k: self.k,
            vertices,
            edges,
        })
    }

    /// Deletes the given edges. Vertices left with degree zero are dropped
    /// as well, so the result's vertex set is the union of its edges plus
    /// whatever isolated vertices `self` already had.
    pub fn remove_edges<'a, I>(&self, es: I) -> Result<Hypergraph, HyperError>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let mut edges = self.edges.clone();
        for e in es {
            if !edges.remove(e) && !self.edges.contains(e) {
                return Err(HyperError::UnknownEdge(e.clone()));
            }
        }
        let before = self.degrees();
        let mut covered: BTreeSet<Vertex> = BTreeSet::new();
        for e in &edges {
            covered.extend(e.vertices().iter().copied());
        }
        let vertices = self
            .vertices
            .iter()
            .copied()
            .filter(|v| covered.contains(v) || before[v] == 0)
            .collect();
        Ok(Hypergraph {
            k: self.k,
            vertices,
            edges,
        })
    }

    /// Image under an injective map defined on every vertex.
    pub fn relabel(&self, map: &VertexMap) -> Option<Hypergraph> {
        let mut vertices = BTreeSet::new();
        for &v in &self.vertices {
            vertices.insert(map.get(v)?);
        }
        let mut edges = BTreeSet::new();
        for e in &self.edges {
            edges.insert(map.apply_edge(e)?);
        }
        Some(Hypergraph {
            k: self.k,
            vertices,
            edges,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge::make_edge;

    fn e(ids: &[Vertex]) -> Edge {
        make_edge(ids, ids.len()).unwrap()
    }

    #[test]
    fn degree_of_isolated_vertex_is_zero() {
        let mut h = Hypergraph::new(5).unwrap();
        h.add_vertex(3);
        assert_eq!(h.degree(3), Ok(0));
        assert_eq!(h.degree(4), Err(HyperError::UnknownVertex(4)));
    }

    #[test]
    fn remove_member_vertex_of_single_edge() {
        let h = Hypergraph::from_edges(5, [e(&[0, 1, 2, 3, 4])]).unwrap();
        let g = h.remove_vertex(2).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.vertex_count(), 4);
    }

    #[test]
    fn remove_edges_drops_uncovered_vertices() {
        let h = Hypergraph::from_edges(3, [e(&[0, 1, 2]), e(&[1, 2, 3])]).unwrap();
        let g = h.remove_edges([&e(&[0, 1, 2])]).unwrap();
        assert_eq!(
            g.vertices().iter().copied().collect::<Vec<_>>(),
            vec![1, 2, 3]
        );
        assert_eq!(
            h.remove_edges([&e(&[0, 1, 3])]),
            Err(HyperError::UnknownEdge(e(&[0, 1, 3])))
        );
    }

    #[test]
    fn add_edge_checks_arity() {
        let mut h = Hypergraph::new(3).unwrap();
        assert!(h.add_edge(e(&[1, 2])).is_err());
        assert!(Hypergraph::new(1).is_err());
    }
}
