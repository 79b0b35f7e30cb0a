use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::edge::{Edge, Vertex};
use crate::error::HyperError;
use crate::graph::Hypergraph;

/// An injective finite map between vertex labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(Vertex, Vertex)>", into = "Vec<(Vertex, Vertex)>")]
pub struct VertexMap(BTreeMap<Vertex, Vertex>);

impl VertexMap {
    pub fn new<I>(pairs: I) -> Result<VertexMap, HyperError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut map = BTreeMap::new();
        let mut image = BTreeSet::new();
        for (a, b) in pairs {
            if !image.insert(b) {
                return Err(HyperError::NotInjective(b));
            }
            if let Some(old) = map.insert(a, b) {
                return Err(HyperError::NotInjective(old));
            }
        }
        Ok(VertexMap(map))
    }

    pub fn identity<'a, I: IntoIterator<Item = &'a Vertex>>(vs: I) -> VertexMap {
        VertexMap(vs.into_iter().map(|&v| (v, v)).collect())
    }

    pub fn get(&self, v: Vertex) -> Option<Vertex> {
        self.0.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.0.iter().map(|(&a, &b)| (a, b))
    }

    pub fn domain(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.keys().copied()
    }

    pub fn image(&self) -> BTreeSet<Vertex> {
        self.0.values().copied().collect()
    }

    /// True iff every vertex of the domain is fixed.
    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|(a, b)| a == b)
    }

    pub fn apply_edge(&self, e: &Edge) -> Option<Edge> {
        e.map(|v| self.get(v))
    }

    pub fn inverse(&self) -> VertexMap {
        VertexMap(self.0.iter().map(|(&a, &b)| (b, a)).collect())
    }

    /// Checks that this map has domain `V(from)`, lands in `V(to)` and sends
    /// every edge of `from` to an edge of `to`.
    pub fn is_monomorphism(&self, from: &Hypergraph, to: &Hypergraph) -> bool {
        self.0.keys().copied().eq(from.vertices().iter().copied())
            && self.0.values().all(|v| to.contains_vertex(*v))
            && from
                .edges()
                .iter()
                .all(|e| self.apply_edge(e).is_some_and(|img| to.contains_edge(&img)))
    }
}

impl TryFrom<Vec<(Vertex, Vertex)>> for VertexMap {
    type Error = HyperError;

    fn try_from(v: Vec<(Vertex, Vertex)>) -> Result<Self, Self::Error> {
        VertexMap::new(v)
    }
}

impl From<VertexMap> for Vec<(Vertex, Vertex)> {
    fn from(m: VertexMap) -> Self {
        m.0.into_iter().collect()
    }
}

impl fmt::Debug for VertexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for VertexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}->{b}")?;
        }
        Ok(())
    }
}
