use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::HyperError;

/// Vertex label. On the infinite board this is a natural number.
pub type Vertex = u32;

pub(crate) type VertexBuf = SmallVec<[Vertex; 8]>;

/// A k-set of vertices kept in strictly increasing order, so that derived
/// equality, ordering and hashing are set semantics.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexBuf);

impl Edge {
    /// Builds the canonical edge on `ids`, which must be `k` distinct labels.
    pub fn new(ids: &[Vertex], k: usize) -> Result<Edge, HyperError> {
        if ids.len() != k {
            return Err(HyperError::WrongArity {
                expected: k,
                found: ids.len(),
            });
        }
        Self::from_set(ids)
    }

    /// Canonical edge on distinct `ids` of any size.
    pub fn from_set(ids: &[Vertex]) -> Result<Edge, HyperError> {
        let mut buf: VertexBuf = ids.iter().copied().collect();
        buf.sort_unstable();
        if let Some(w) = buf.windows(2).find(|w| w[0] == w[1]) {
            return Err(HyperError::DuplicateVertex(w[0]));
        }
        Ok(Edge(buf))
    }

    pub(crate) fn from_sorted_unchecked(buf: VertexBuf) -> Edge {
        debug_assert!(buf.windows(2).all(|w| w[0] < w[1]));
        Edge(buf)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn intersection_size(&self, other: &Edge) -> usize {
        intersection_size(self, other)
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    /// Applies `f` pointwise. Returns `None` if `f` is undefined somewhere or
    /// collapses two vertices.
    pub fn map<F>(&self, mut f: F) -> Option<Edge>
    where
        F: FnMut(Vertex) -> Option<Vertex>,
    {
        let mut buf = VertexBuf::with_capacity(self.0.len());
        for &v in &self.0 {
            buf.push(f(v)?);
        }
        buf.sort_unstable();
        if buf.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Edge(buf))
    }

    /// This edge with `v` removed and `w` added, if that is again a set of
    /// the same size.
    pub fn replace(&self, v: Vertex, w: Vertex) -> Option<Edge> {
        if !self.contains(v) || (v != w && self.contains(w)) {
            return None;
        }
        self.map(|x| Some(if x == v { w } else { x }))
    }
}

/// `make_edge`: canonical sorted edge of arity `k`.
pub fn make_edge(ids: &[Vertex], k: usize) -> Result<Edge, HyperError> {
    Edge::new(ids, k)
}

/// Size of the set intersection of two edges (merge of sorted arrays).
pub fn intersection_size(a: &Edge, b: &Edge) -> usize {
    let (x, y) = (a.vertices(), b.vertices());
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let ids = Vec::<Vertex>::deserialize(d)?;
        Edge::from_set(&ids).map_err(serde::de::Error::custom)
    }
}
