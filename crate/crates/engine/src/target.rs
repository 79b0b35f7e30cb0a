use hypercore::{canonical_h5, Designated, Edge, Host, Hypergraph, Pattern, Vertex};
use serde::{Deserialize, Serialize};

use crate::error::GameError;
use crate::threat::ThreatKind;

/// `H` minus one of its edges, compiled for threat search.
#[derive(Clone, Debug)]
pub struct Template {
    pub removed: Edge,
    pub kind: ThreatKind,
    pub graph: Hypergraph,
    pub(crate) pattern: Pattern,
}

/// The hypergraph both players race to build, with `z`, `r`, `g` and the
/// compiled patterns every search reuses.
#[derive(Clone, Debug)]
pub struct Target {
    designated: Designated,
    templates: Vec<Template>,
    full: Pattern,
    minus_z: Hypergraph,
    minus_z_pattern: Pattern,
    anchor_radius: Option<usize>,
}

impl Target {
    /// Fails unless `z` has degree exactly 2. Also requires every vertex to
    /// have degree at least 2, so that deleting one edge keeps the vertex
    /// set and an embedding of `H - e` determines the completing edge.
    pub fn new(graph: Hypergraph, z: Vertex) -> Result<Target, GameError> {
        let dz = graph.degree(z)?;
        if dz != 2 {
            return Err(GameError::NotDegreeTwo(z, dz));
        }
        if let Some((v, d)) = graph.degrees().into_iter().find(|&(_, d)| d < 2) {
            return Err(GameError::InvalidTarget(format!(
                "vertex {v} has degree {d}; every degree must be at least 2"
            )));
        }
        let (r, g) = {
            let mut through = graph.incident_edges(z).cloned();
            (
                through.next().expect("degree 2"),
                through.next().expect("degree 2"),
            )
        };
        let templates: Vec<Template> = graph
            .edges()
            .iter()
            .map(|e| {
                let sub = graph.remove_edges([e]).expect("edge of graph");
                debug_assert_eq!(sub.vertex_count(), graph.vertex_count());
                Template {
                    removed: e.clone(),
                    kind: if *e == r || *e == g {
                        ThreatKind::Standard
                    } else {
                        ThreatKind::Special
                    },
                    pattern: Pattern::new(&sub),
                    graph: sub,
                }
            })
            .collect();
        let minus_z = graph.remove_vertex(z)?;
        let anchor_radius = templates
            .iter()
            .map(|t: &Template| line_diameter(&t.graph))
            .chain([line_diameter(&graph)])
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)));
        Ok(Target {
            anchor_radius,
            full: Pattern::new(&graph),
            minus_z_pattern: Pattern::new(&minus_z),
            minus_z,
            templates,
            designated: Designated { graph, z, r, g },
        })
    }

    pub fn h5() -> Target {
        let d = canonical_h5();
        Target::new(d.graph, d.z).expect("canonical target is valid")
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.designated.graph
    }

    pub fn designated(&self) -> &Designated {
        &self.designated
    }

    pub fn k(&self) -> usize {
        self.designated.graph.k()
    }

    /// Number of edges, `m`.
    pub fn m(&self) -> usize {
        self.designated.graph.edge_count()
    }

    pub fn z(&self) -> Vertex {
        self.designated.z
    }

    pub fn r(&self) -> &Edge {
        &self.designated.r
    }

    pub fn g(&self) -> &Edge {
        &self.designated.g
    }

    pub fn templates(&self) -> &[Template] {
        &self.templates
    }

    pub fn minus_z(&self) -> &Hypergraph {
        &self.minus_z
    }

    pub(crate) fn full_pattern(&self) -> &Pattern {
        &self.full
    }

    pub(crate) fn minus_z_pattern(&self) -> &Pattern {
        &self.minus_z_pattern
    }

    /// Every copy of `H` or of `H - e` that uses a given board edge lies
    /// within this many intersection steps of it. `None` when some template
    /// is disconnected.
    pub fn anchor_radius(&self) -> Option<usize> {
        self.anchor_radius
    }

    /// `classify`: standard iff the missing template edge is `r` or `g`.
    pub fn classify(&self, template_edge: &Edge) -> ThreatKind {
        if template_edge == self.r() || template_edge == self.g() {
            ThreatKind::Standard
        } else {
            ThreatKind::Special
        }
    }

    pub fn descriptor(&self) -> TargetDescriptor {
        TargetDescriptor {
            k: self.k(),
            m: self.m(),
            z: self.z(),
            edges: self.graph().edges().iter().cloned().collect(),
        }
    }

    pub fn from_descriptor(d: &TargetDescriptor) -> Result<Target, GameError> {
        let graph = Hypergraph::from_edges(d.k, d.edges.iter().cloned())?;
        if graph.edge_count() != d.m {
            return Err(GameError::InvalidTarget(format!(
                "descriptor says m = {} but lists {} edges",
                d.m,
                graph.edge_count()
            )));
        }
        Target::new(graph, d.z)
    }

    /// Embeddings of `H - z` into exactly `edges` (as a labelled copy).
    pub fn minus_z_labelings(&self, edges: &[Edge]) -> Vec<hypercore::VertexMap> {
        if edges.len() != self.minus_z.edge_count() {
            return Vec::new();
        }
        self.minus_z_pattern
            .all(&Host::from_edges(self.k(), edges.iter()))
    }
}

/// Largest distance between two edges in the intersection graph of the
/// edges of `h`, or `None` if that graph is disconnected.
fn line_diameter(h: &Hypergraph) -> Option<usize> {
    let edges: Vec<&Edge> = h.edges().iter().collect();
    let mut worst = 0;
    for start in 0..edges.len() {
        let mut dist = vec![usize::MAX; edges.len()];
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..edges.len() {
                if dist[j] == usize::MAX && edges[i].intersection_size(edges[j]) > 0 {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        worst = worst.max(*dist.iter().max()?);
        if worst == usize::MAX {
            return None;
        }
    }
    Some(worst)
}

/// Serializable summary of a target, written into transcripts and replies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetDescriptor {
    pub k: usize,
    pub m: usize,
    pub z: Vertex,
    pub edges: Vec<Edge>,
}
