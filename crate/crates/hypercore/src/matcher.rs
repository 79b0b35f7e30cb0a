//! Backtracking monomorphism search between k-uniform hypergraphs.
//!
//! A [`Pattern`] is compiled once (vertex order, per-step edge checks) and
//! can be matched against many [`Host`]s. Before searching, host edges are
//! peeled: an edge survives only if its sorted degree profile dominates the
//! profile of some pattern edge, repeated to a fixpoint. Every edge in the
//! image of a monomorphism survives peeling, so the pruning is exact.

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

use smallvec::SmallVec;

use crate::edge::{Edge, Vertex, VertexBuf};
use crate::graph::Hypergraph;
use crate::map::VertexMap;

const UNSET: u32 = u32::MAX;

type LocalEdge = SmallVec<[u32; 8]>;

/// A compiled template graph.
#[derive(Clone, Debug)]
pub struct Pattern {
    k: usize,
    labels: Vec<Vertex>,
    edges: Vec<Vec<usize>>,
    degree: Vec<usize>,
    /// Descending degree profile of each edge.
    profiles: Vec<Vec<usize>>,
    min_profile: Vec<usize>,
    order: Vec<usize>,
    steps: Vec<Step>,
    /// `anchored[j]`: steps that place the vertices of edge `j` first.
    anchored: Vec<Vec<Step>>,
}

/// Vertex order and per-step checks. `first` is placed before everything
/// else; the rest goes most constrained first: vertices sharing an edge with
/// many placed vertices, then high degree, then low label.
fn plan(
    edges: &[Vec<usize>],
    incident: &[Vec<usize>],
    degree: &[usize],
    first: &[usize],
) -> (Vec<usize>, Vec<Step>) {
    let n = degree.len();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut placed_in_edge = vec![0usize; edges.len()];
    for i in 0..n {
        let next = if i < first.len() {
            first[i]
        } else {
            (0..n)
                .filter(|&v| !placed[v])
                .max_by(|&a, &b| {
                    let conn = |v: usize| {
                        incident[v]
                            .iter()
                            .map(|&e| placed_in_edge[e])
                            .max()
                            .unwrap_or(0)
                    };
                    conn(a)
                        .cmp(&conn(b))
                        .then(degree[a].cmp(&degree[b]))
                        .then(b.cmp(&a))
                })
                .expect("unplaced vertex remains")
        };
        placed[next] = true;
        for &e in &incident[next] {
            placed_in_edge[e] += 1;
        }
        order.push(next);
    }

    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let steps = order
        .iter()
        .enumerate()
        .map(|(s, &v)| {
            let mut step = Step {
                vertex: v,
                ..Step::default()
            };
            let mut best = 0;
            for &e in &incident[v] {
                let before = edges[e].iter().filter(|&&u| position[u] < s).count();
                if before == edges[e].len() - 1 {
                    step.closing.push(e);
                } else if before > 0 {
                    step.partial.push(e);
                }
                if before > best {
                    best = before;
                    step.anchor = Some(e);
                }
            }
            step
        })
        .collect();
    (order, steps)
}

#[derive(Clone, Debug, Default)]
struct Step {
    vertex: usize,
    /// Edges whose last vertex is placed at this step.
    closing: Vec<usize>,
    /// Edges through this vertex that stay incomplete after this step but
    /// already have a placed vertex.
    partial: Vec<usize>,
    /// Edge used to generate candidates (most placed vertices).
    anchor: Option<usize>,
}

impl Pattern {
    pub fn new(graph: &Hypergraph) -> Pattern {
        let labels: Vec<Vertex> = graph.vertices().iter().copied().collect();
        let index: HashMap<Vertex, usize> =
            labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<Vec<usize>> = graph
            .edges()
            .iter()
            .map(|e| e.vertices().iter().map(|v| index[v]).collect())
            .collect();
        let n = labels.len();
        let mut degree = vec![0; n];
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                degree[v] += 1;
                incident[v].push(i);
            }
        }
        let profiles: Vec<Vec<usize>> = edges
            .iter()
            .map(|e| {
                let mut p: Vec<usize> = e.iter().map(|&v| degree[v]).collect();
                p.sort_unstable_by(|a, b| b.cmp(a));
                p
            })
            .collect();
        let min_profile = (0..graph.k())
            .map(|i| profiles.iter().map(|p| p[i]).min().unwrap_or(0))
            .collect();

        let (order, steps) = plan(&edges, &incident, &degree, &[]);
        let anchored = edges
            .iter()
            .map(|e| plan(&edges, &incident, &degree, e).1)
            .collect();

        Pattern {
            k: graph.k(),
            labels,
            edges,
            degree,
            profiles,
            min_profile,
            order,
            steps,
            anchored,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }

    /// Order in which pattern vertices are assigned (as labels).
    pub fn search_order(&self) -> Vec<Vertex> {
        self.order.iter().map(|&i| self.labels[i]).collect()
    }

    fn local(&self, v: Vertex) -> Option<usize> {
        self.labels.binary_search(&v).ok()
    }

    /// Runs the search, calling `visit` with each monomorphism.
    pub fn search<F>(&self, host: &Host, restrict: &Restriction, mut visit: F)
    where
        F: FnMut(&VertexMap) -> ControlFlow<()>,
    {
        if host.k != self.k || self.labels.len() > host.labels.len() {
            return;
        }
        let peeled = host.peel(self);
        if peeled.alive_count < self.edges.len() {
            return;
        }
        let mut allowed: Vec<Option<Vec<u32>>> = vec![None; self.labels.len()];
        for (pv, hs) in restrict.iter() {
            let Some(p) = self.local(*pv) else { continue };
            let mut list: Vec<u32> = hs.iter().filter_map(|h| host.local(*h)).collect();
            list.sort_unstable();
            list.dedup();
            allowed[p] = Some(list);
        }
        let _ = self.run(host, &peeled, &self.steps, allowed, &mut visit);
    }

    /// Monomorphisms whose image contains the host edge `anchor`. Each is
    /// reported once.
    pub fn search_through<F>(&self, host: &Host, anchor: &Edge, mut visit: F)
    where
        F: FnMut(&VertexMap) -> ControlFlow<()>,
    {
        if host.k != self.k || self.labels.len() > host.labels.len() {
            return;
        }
        let Some(local): Option<Vec<u32>> =
            anchor.vertices().iter().map(|v| host.local(*v)).collect()
        else {
            return;
        };
        let mut sorted = local.clone();
        sorted.sort_unstable();
        let Ok(at) = host.edges.binary_search(&sorted.into_iter().collect()) else {
            return;
        };
        let dominates = |profile: &[usize], j: usize| {
            profile.iter().zip(&self.profiles[j]).all(|(h, p)| h >= p)
        };
        let profile_of = |degree: &dyn Fn(u32) -> usize| {
            let mut p: Vec<usize> = local.iter().map(|&v| degree(v)).collect();
            p.sort_unstable_by(|a, b| b.cmp(a));
            p
        };
        // Host degrees only shrink under peeling, so check them first.
        let raw = profile_of(&|v| host.incident[v as usize].len());
        if !(0..self.edges.len()).any(|j| dominates(&raw, j)) {
            return;
        }
        let peeled = host.peel(self);
        if peeled.alive_count < self.edges.len() || !peeled.alive[at] {
            return;
        }
        let profile = profile_of(&|v| peeled.degree[v as usize]);
        for (j, steps) in self.anchored.iter().enumerate() {
            if !dominates(&profile, j) {
                continue;
            }
            let mut allowed: Vec<Option<Vec<u32>>> = vec![None; self.labels.len()];
            for &p in &self.edges[j] {
                allowed[p] = Some(local.clone());
            }
            if self
                .run(host, &peeled, steps, allowed, &mut visit)
                .is_break()
            {
                return;
            }
        }
    }

    fn run(
        &self,
        host: &Host,
        peeled: &Peeled,
        steps: &[Step],
        allowed: Vec<Option<Vec<u32>>>,
        visit: &mut dyn FnMut(&VertexMap) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let mut run = Run {
            pattern: self,
            steps,
            host,
            alive: peeled,
            allowed,
            map: vec![UNSET; self.labels.len()],
            used: vec![false; host.labels.len()],
            seen: vec![0; host.labels.len()],
            stamp: 0,
        };
        run.descend(0, &mut |assign: &[u32]| {
            let m = VertexMap::new(
                assign
                    .iter()
                    .enumerate()
                    .map(|(p, &h)| (self.labels[p], host.labels[h as usize])),
            )
            .expect("search assigns injectively");
            visit(&m)
        })
    }

    pub fn all(&self, host: &Host) -> Vec<VertexMap> {
        self.all_restricted(host, &Restriction::new())
    }

    pub fn all_restricted(&self, host: &Host, restrict: &Restriction) -> Vec<VertexMap> {
        let mut out = Vec::new();
        self.search(host, restrict, |m| {
            out.push(m.clone());
            ControlFlow::Continue(())
        });
        out
    }

    pub fn first(&self, host: &Host) -> Option<VertexMap> {
        let mut out = None;
        self.search(host, &Restriction::new(), |m| {
            out = Some(m.clone());
            ControlFlow::Break(())
        });
        out
    }

    pub fn count(&self, host: &Host) -> usize {
        let mut n = 0;
        self.search(host, &Restriction::new(), |_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }
}

/// Pins pattern vertices to candidate host vertices (both as labels).
pub type Restriction = BTreeMap<Vertex, Vec<Vertex>>;

/// A host hypergraph indexed for matching.
#[derive(Clone, Debug)]
pub struct Host {
    k: usize,
    labels: Vec<Vertex>,
    /// Sorted and distinct.
    edges: Vec<LocalEdge>,
    incident: Vec<Vec<u32>>,
}

impl Host {
    pub fn new(graph: &Hypergraph) -> Host {
        Host::build(
            graph.k(),
            graph.vertices().iter().copied(),
            graph.edges().iter(),
        )
    }

    /// The hypergraph spanned by `edges`.
    pub fn from_edges<'a, I>(k: usize, edges: I) -> Host
    where
        I: IntoIterator<Item = &'a Edge>,
        I::IntoIter: Clone,
    {
        let it = edges.into_iter();
        let verts = it.clone().flat_map(|e| e.vertices().iter().copied());
        Host::build(k, verts, it)
    }

    fn build<'a>(
        k: usize,
        vertices: impl Iterator<Item = Vertex>,
        edges: impl Iterator<Item = &'a Edge>,
    ) -> Host {
        let mut labels: Vec<Vertex> = vertices.collect();
        labels.sort_unstable();
        labels.dedup();
        let index = |v: &Vertex| labels.binary_search(v).expect("edge vertex listed") as u32;
        // labels are sorted, so local ids stay sorted
        let mut local_edges: Vec<LocalEdge> = edges
            .filter(|e| e.len() == k)
            .map(|e| e.vertices().iter().map(index).collect())
            .collect();
        local_edges.sort_unstable();
        local_edges.dedup();
        let mut incident = vec![Vec::new(); labels.len()];
        for (id, le) in local_edges.iter().enumerate() {
            for &v in le {
                incident[v as usize].push(id as u32);
            }
        }
        Host {
            k,
            labels,
            edges: local_edges,
            incident,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn local(&self, v: Vertex) -> Option<u32> {
        self.labels.binary_search(&v).ok().map(|i| i as u32)
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        let mut le = LocalEdge::new();
        for v in e.vertices() {
            match self.local(*v) {
                Some(i) => le.push(i),
                None => return false,
            }
        }
        self.edges.binary_search(&le).is_ok()
    }

    fn peel(&self, pattern: &Pattern) -> Peeled {
        let mut alive = vec![true; self.edges.len()];
        let mut degree: Vec<usize> = self.incident.iter().map(Vec::len).collect();
        let mut alive_count = self.edges.len();
        let mut profile = Vec::with_capacity(self.k);
        loop {
            let mut changed = false;
            for (i, e) in self.edges.iter().enumerate() {
                if !alive[i] {
                    continue;
                }
                profile.clear();
                profile.extend(e.iter().map(|&v| degree[v as usize]));
                profile.sort_unstable_by(|a, b| b.cmp(a));
                let dominates = |req: &[usize]| profile.iter().zip(req).all(|(h, p)| h >= p);
                let ok = dominates(&pattern.min_profile)
                    && pattern.profiles.iter().any(|p| dominates(p));
                if !ok {
                    alive[i] = false;
                    alive_count -= 1;
                    for &v in e {
                        degree[v as usize] -= 1;
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let incident: Vec<Vec<u32>> = self
            .incident
            .iter()
            .map(|es| es.iter().copied().filter(|&e| alive[e as usize]).collect())
            .collect();
        let words = self.edges.len().div_ceil(64).max(1);
        let mut bits = vec![0u64; words * self.labels.len()];
        for (v, es) in incident.iter().enumerate() {
            for &e in es {
                bits[v * words + e as usize / 64] |= 1 << (e % 64);
            }
        }
        Peeled {
            alive,
            degree,
            alive_count,
            words,
            bits,
        }
    }
}

struct Peeled {
    alive: Vec<bool>,
    degree: Vec<usize>,
    alive_count: usize,
    /// Alive incidence as bit rows, `words` words per vertex.
    words: usize,
    bits: Vec<u64>,
}

impl Peeled {
    fn row(&self, v: u32) -> &[u64] {
        let at = v as usize * self.words;
        &self.bits[at..at + self.words]
    }

    /// Alive edges containing every vertex of `vs` (non-empty), as bits.
    fn common(&self, vs: &[u32], out: &mut SmallVec<[u64; 4]>) {
        out.clear();
        out.extend_from_slice(self.row(vs[0]));
        for &v in &vs[1..] {
            for (o, w) in out.iter_mut().zip(self.row(v)) {
                *o &= w;
            }
        }
    }
}

struct Run<'a> {
    pattern: &'a Pattern,
    steps: &'a [Step],
    host: &'a Host,
    alive: &'a Peeled,
    allowed: Vec<Option<Vec<u32>>>,
    map: Vec<u32>,
    used: Vec<bool>,
    seen: Vec<u32>,
    stamp: u32,
}

impl Run<'_> {
    fn descend(
        &mut self,
        depth: usize,
        visit: &mut dyn FnMut(&[u32]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if depth == self.steps.len() {
            return visit(&self.map);
        }
        let candidates = self.candidates(depth);
        let p = self.steps[depth].vertex;
        for c in candidates {
            if !self.feasible(depth, c) {
                continue;
            }
            self.map[p] = c;
            self.used[c as usize] = true;
            let flow = self.descend(depth + 1, visit);
            self.used[c as usize] = false;
            self.map[p] = UNSET;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn candidates(&mut self, depth: usize) -> Vec<u32> {
        let step = &self.steps[depth];
        let p = step.vertex;
        if let Some(list) = &self.allowed[p] {
            return list.clone();
        }
        let Some(anchor) = step.anchor else {
            return (0..self.host.labels.len() as u32).collect();
        };
        let placed: VertexBuf = self.pattern.edges[anchor]
            .iter()
            .map(|&u| self.map[u])
            .filter(|&h| h != UNSET)
            .collect();
        let mut common = SmallVec::new();
        self.alive.common(&placed, &mut common);
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        let mut out = Vec::new();
        for e in ones(&common) {
            for &c in &self.host.edges[e] {
                if !self.used[c as usize] && self.seen[c as usize] != self.stamp {
                    self.seen[c as usize] = self.stamp;
                    out.push(c);
                }
            }
        }
        out
    }

    fn feasible(&self, depth: usize, c: u32) -> bool {
        let step = &self.steps[depth];
        let p = step.vertex;
        if self.used[c as usize] || self.alive.degree[c as usize] < self.pattern.degree[p] {
            return false;
        }
        let mut buf = LocalEdge::new();
        let mut common = SmallVec::new();
        // A closing edge is present iff some alive edge holds all k images.
        for &e in step.closing.iter().chain(&step.partial) {
            buf.clear();
            for &u in &self.pattern.edges[e] {
                let h = if u == p { c } else { self.map[u] };
                if h != UNSET {
                    buf.push(h);
                }
            }
            self.alive.common(&buf, &mut common);
            if common.iter().all(|&w| w == 0) {
                return false;
            }
        }
        true
    }
}

/// Indices of the set bits.
fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                i * 64 + b
            })
        })
    })
}

/// `enumerate_monomorphisms`: every injective map `V(pattern) -> V(host)`
/// sending edges to edges.
pub fn enumerate_monomorphisms(pattern: &Hypergraph, host: &Hypergraph) -> Vec<VertexMap> {
    if pattern.k() != host.k() {
        return Vec::new();
    }
    Pattern::new(pattern).all(&Host::new(host))
}

/// `enumerate_embeddings`: monomorphisms of `pattern` into the hypergraph
/// spanned by `host_edges`.
pub fn enumerate_embeddings<'a, I>(pattern: &Hypergraph, host_edges: I) -> Vec<VertexMap>
where
    I: IntoIterator<Item = &'a Edge>,
    I::IntoIter: Clone,
{
    Pattern::new(pattern).all(&Host::from_edges(pattern.k(), host_edges))
}

/// `is_isomorphic`: a bijection preserving edges in both directions, if any.
pub fn is_isomorphic(a: &Hypergraph, b: &Hypergraph) -> Option<VertexMap> {
    if a.k() != b.k() || a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let mut da: Vec<usize> = a.degrees().into_values().collect();
    let mut db: Vec<usize> = b.degrees().into_values().collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    // equal vertex and edge counts make any monomorphism a bijection on
    // both vertices and edges
    Pattern::new(a).first(&Host::new(b))
}

pub(crate) fn edge_from_local(host: &Host, le: &[u32]) -> Edge {
    Edge::from_sorted_unchecked(le.iter().map(|&i| host.labels[i as usize]).collect())
}

impl Host {
    /// Edges still alive after peeling against `pattern`, as labels.
    pub fn peeled_edges(&self, pattern: &Pattern) -> Vec<Edge> {
        let p = self.peel(pattern);
        self.edges
            .iter()
            .zip(&p.alive)
            .filter(|(_, &a)| a)
            .map(|(e, _)| edge_from_local(self, e))
            .collect()
    }
}
