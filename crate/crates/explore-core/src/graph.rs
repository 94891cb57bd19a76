//! Weighted undirected graphs: construction, validation, classification,
//! cycle decomposition, shortest paths, and a plain text interchange format.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::paths::{self, Adjacency};
use crate::weight::{format_weight, parse_weight, Weight};
use num_traits::Zero;

/// Vertex identifier. Instances use small dense identifiers, but any `u32`
/// values are accepted.
pub type VertexId = u32;

/// Unordered pair of endpoints identifying an edge (`a <= b`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeKey {
    pub a: VertexId,
    pub b: VertexId,
}

impl EdgeKey {
    pub fn new(u: VertexId, v: VertexId) -> Self {
        if u <= v {
            EdgeKey { a: u, b: v }
        } else {
            EdgeKey { a: v, b: u }
        }
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// A weighted edge with canonical endpoint order (`u < v`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Weight,
}

impl Edge {
    pub fn key(&self) -> EdgeKey {
        EdgeKey::new(self.u, self.v)
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            assert_eq!(x, self.v, "vertex {x} is not an endpoint of {}", self.key());
            self.u
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {u}-{v} has non-positive weight {weight}")]
    NonPositiveWeight {
        u: VertexId,
        v: VertexId,
        weight: String,
    },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {u}-{v}")]
    ParallelEdge { u: VertexId, v: VertexId },
    #[error("graph is not connected: vertex {0} is unreachable from the start")]
    Disconnected(VertexId),
    #[error("vertex {0} does not belong to the graph")]
    UnknownVertex(VertexId),
    #[error("not a cactus: edge {0} lies on more than one cycle")]
    NotCactus(EdgeKey),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Structural class of a connected graph, from most to least specific.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphClass {
    /// No cycle (`m = n - 1`).
    Tree,
    /// Exactly one cycle (`m = n`).
    Unicyclic,
    /// Every edge lies on at most one cycle.
    Cactus,
    /// Anything else.
    General,
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GraphClass::Tree => "tree",
            GraphClass::Unicyclic => "unicyclic",
            GraphClass::Cactus => "cactus",
            GraphClass::General => "general",
        };
        f.write_str(s)
    }
}

/// A simple cycle in canonical orientation: `vertices[0]` is the smallest
/// vertex on the cycle and `vertices[1]` is its smaller cycle neighbor.
/// `edges[i]` joins `vertices[i]` and `vertices[(i + 1) % len]`.
#[derive(Clone, Debug)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<Edge>,
    pub total_length: Weight,
}

impl Cycle {
    /// The unique edge longer than all other cycle edges combined, i.e.
    /// `2 * |e| > |C|`, if one exists. Removing it from consideration is what
    /// makes a cycle traversable "both ways cheaper than around".
    pub fn long_edge(&self) -> Option<&Edge> {
        let max = self
            .edges
            .iter()
            .max_by(|a, b| a.weight.cmp(&b.weight))
            .expect("cycle has at least three edges");
        let twice = &max.weight + &max.weight;
        if twice > self.total_length {
            Some(max)
        } else {
            None
        }
    }
}

/// Partition of a cactus graph's edge set into simple cycles and bridges.
#[derive(Clone, Debug)]
pub struct CycleDecomposition {
    pub cycles: Vec<Cycle>,
    pub bridges: Vec<Edge>,
}

/// A validated connected weighted graph with a distinguished start vertex.
///
/// Weights are positive exact rationals; self-loops and parallel edges are
/// rejected at construction, as is any vertex unreachable from the start.
#[derive(Clone, Debug)]
pub struct Graph {
    start: VertexId,
    adj: Adjacency,
    edges: Vec<Edge>,
}

impl Graph {
    /// Build and validate a graph. The vertex set is inferred from edge
    /// endpoints plus the start vertex.
    pub fn new(
        start: VertexId,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Weight)>,
    ) -> Result<Self, GraphError> {
        let mut adj: Adjacency = BTreeMap::new();
        adj.entry(start).or_default();
        let mut list: Vec<Edge> = Vec::new();
        let mut seen: BTreeSet<EdgeKey> = BTreeSet::new();
        for (u, v, weight) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if weight <= Weight::zero() {
                return Err(GraphError::NonPositiveWeight {
                    u,
                    v,
                    weight: format_weight(&weight),
                });
            }
            let key = EdgeKey::new(u, v);
            if !seen.insert(key) {
                return Err(GraphError::ParallelEdge { u: key.a, v: key.b });
            }
            adj.entry(key.a).or_default().insert(key.b, weight.clone());
            adj.entry(key.b).or_default().insert(key.a, weight.clone());
            list.push(Edge {
                u: key.a,
                v: key.b,
                weight,
            });
        }
        list.sort_by_key(|e| (e.u, e.v));
        let g = Graph {
            start,
            adj,
            edges: list,
        };
        // Connectivity from the start vertex.
        let mut reached: BTreeSet<VertexId> = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        reached.insert(start);
        while let Some(u) = queue.pop_front() {
            for &z in g.adj[&u].keys() {
                if reached.insert(z) {
                    queue.push_back(z);
                }
            }
        }
        if let Some(&v) = g.adj.keys().find(|v| !reached.contains(v)) {
            return Err(GraphError::Disconnected(v));
        }
        Ok(g)
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All vertices in ascending order.
    pub fn vertices(&self) -> Vec<VertexId> {
        self.adj.keys().copied().collect()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    /// Edges in ascending `(u, v)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_weight(&self, u: VertexId, v: VertexId) -> Option<&Weight> {
        self.adj.get(&u).and_then(|nbrs| nbrs.get(&v))
    }

    /// Neighbors of `v` with edge weights, in ascending neighbor order.
    pub fn neighbors(&self, v: VertexId) -> Result<&BTreeMap<VertexId, Weight>, GraphError> {
        self.adj.get(&v).ok_or(GraphError::UnknownVertex(v))
    }

    pub(crate) fn adjacency(&self) -> &Adjacency {
        &self.adj
    }

    pub fn total_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.weight.clone()).sum()
    }

    /// Shortest distances from `u` to every vertex (full knowledge).
    pub fn distances_from(&self, u: VertexId) -> Result<BTreeMap<VertexId, Weight>, GraphError> {
        if !self.has_vertex(u) {
            return Err(GraphError::UnknownVertex(u));
        }
        Ok(paths::distances(&self.adj, u, |_| true, |_, _| true))
    }

    /// Shortest distance between two vertices (full knowledge).
    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<Weight, GraphError> {
        if !self.has_vertex(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        let dist = self.distances_from(u)?;
        Ok(dist[&v].clone())
    }

    /// Lexicographically smallest shortest path between two vertices
    /// (full knowledge), as `(vertex sequence, total length)`.
    pub fn shortest_path(
        &self,
        u: VertexId,
        v: VertexId,
    ) -> Result<(Vec<VertexId>, Weight), GraphError> {
        if !self.has_vertex(u) {
            return Err(GraphError::UnknownVertex(u));
        }
        if !self.has_vertex(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        Ok(
            paths::lex_shortest_path(&self.adj, u, v, |_| true, |_, _| true)
                .expect("graph is connected"),
        )
    }

    /// Structural class; the most specific of the four classes applies.
    pub fn classify(&self) -> GraphClass {
        let n = self.vertex_count();
        let m = self.edge_count();
        if m + 1 == n {
            GraphClass::Tree
        } else if m == n {
            GraphClass::Unicyclic
        } else if self.cycle_decomposition().is_ok() {
            GraphClass::Cactus
        } else {
            GraphClass::General
        }
    }

    /// Edge sets of the biconnected components, discovered by an iterative
    /// depth-first search. Single-edge components are bridges.
    fn biconnected_components(&self) -> Vec<Vec<EdgeKey>> {
        let mut disc: BTreeMap<VertexId, u32> = BTreeMap::new();
        let mut low: BTreeMap<VertexId, u32> = BTreeMap::new();
        let mut timer: u32 = 0;
        let mut comps: Vec<Vec<EdgeKey>> = Vec::new();
        let mut edge_stack: Vec<EdgeKey> = Vec::new();

        struct Frame {
            v: VertexId,
            parent: Option<VertexId>,
            nbrs: Vec<VertexId>,
            idx: usize,
        }

        for &root in self.adj.keys() {
            if disc.contains_key(&root) {
                continue;
            }
            disc.insert(root, timer);
            low.insert(root, timer);
            timer += 1;
            let mut stack = vec![Frame {
                v: root,
                parent: None,
                nbrs: self.adj[&root].keys().copied().collect(),
                idx: 0,
            }];
            while let Some(frame) = stack.last_mut() {
                let u = frame.v;
                if let Some(&w) = frame.nbrs.get(frame.idx) {
                    frame.idx += 1;
                    if Some(w) == frame.parent {
                        continue; // the tree edge we came in along (graph is simple)
                    }
                    if let Some(&dw) = disc.get(&w) {
                        if dw < disc[&u] {
                            // back edge to an ancestor
                            edge_stack.push(EdgeKey::new(u, w));
                            let lu = low[&u].min(dw);
                            low.insert(u, lu);
                        }
                    } else {
                        edge_stack.push(EdgeKey::new(u, w));
                        disc.insert(w, timer);
                        low.insert(w, timer);
                        timer += 1;
                        stack.push(Frame {
                            v: w,
                            parent: Some(u),
                            nbrs: self.adj[&w].keys().copied().collect(),
                            idx: 0,
                        });
                    }
                } else {
                    stack.pop();
                    if let Some(parent_frame) = stack.last() {
                        let p = parent_frame.v;
                        let lp = low[&p].min(low[&u]);
                        low.insert(p, lp);
                        if low[&u] >= disc[&p] {
                            // `p` separates the component hanging off edge (p, u).
                            let mut comp = Vec::new();
                            let sep = EdgeKey::new(p, u);
                            while let Some(top) = edge_stack.pop() {
                                comp.push(top);
                                if top == sep {
                                    break;
                                }
                            }
                            comps.push(comp);
                        }
                    }
                }
            }
        }
        comps
    }

    /// Partition the edges into simple cycles and bridges. Errors with
    /// [`GraphError::NotCactus`] if some biconnected component is neither.
    pub fn cycle_decomposition(&self) -> Result<CycleDecomposition, GraphError> {
        let mut cycles: Vec<Cycle> = Vec::new();
        let mut bridges: Vec<Edge> = Vec::new();
        for comp in self.biconnected_components() {
            if comp.len() == 1 {
                let k = comp[0];
                bridges.push(Edge {
                    u: k.a,
                    v: k.b,
                    weight: self.adj[&k.a][&k.b].clone(),
                });
                continue;
            }
            // A biconnected component is a simple cycle iff every vertex in it
            // has exactly two incident component edges.
            let mut local: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
            for k in &comp {
                local.entry(k.a).or_default().push(k.b);
                local.entry(k.b).or_default().push(k.a);
            }
            if local.len() != comp.len() || local.values().any(|nbrs| nbrs.len() != 2) {
                let k = comp.iter().min().copied().expect("component is non-empty");
                return Err(GraphError::NotCactus(k));
            }
            // Walk the cycle from its smallest vertex toward the smaller
            // neighbor for a canonical orientation.
            let (&first, nbrs) = local.iter().next().expect("component is non-empty");
            let mut order = vec![first];
            let mut prev = first;
            let mut cur = *nbrs.iter().min().expect("cycle vertex has two neighbors");
            while cur != first {
                order.push(cur);
                let next = local[&cur]
                    .iter()
                    .copied()
                    .find(|&z| z != prev)
                    .expect("cycle vertex has two neighbors");
                prev = cur;
                cur = next;
            }
            let edges: Vec<Edge> = order
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    let b = order[(i + 1) % order.len()];
                    let k = EdgeKey::new(a, b);
                    Edge {
                        u: k.a,
                        v: k.b,
                        weight: self.adj[&k.a][&k.b].clone(),
                    }
                })
                .collect();
            let total_length = edges.iter().map(|e| e.weight.clone()).sum();
            cycles.push(Cycle {
                vertices: order,
                edges,
                total_length,
            });
        }
        cycles.sort_by_key(|c| c.vertices[0]);
        bridges.sort_by_key(|e| (e.u, e.v));
        Ok(CycleDecomposition { cycles, bridges })
    }

    /// Serialize to the plain text format:
    ///
    /// ```text
    /// graph <n> <m> <start>
    /// edge <u> <v> <p>/<q>
    /// ```
    ///
    /// Edges are written in ascending `(u, v)` order; the output of
    /// `to_text` parses back to an identical graph and re-serializes
    /// byte-identically.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "graph {} {} {}\n",
            self.vertex_count(),
            self.edge_count(),
            self.start
        ));
        for e in &self.edges {
            out.push_str(&format!(
                "edge {} {} {}\n",
                e.u,
                e.v,
                format_weight(&e.weight)
            ));
        }
        out
    }

    /// Parse the plain text format. Blank lines and lines starting with `#`
    /// are ignored; weights may be `p/q` or bare integers.
    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize, VertexId)> = None;
        let mut edges: Vec<(VertexId, VertexId, Weight)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let parse_err = |msg: String| GraphError::Parse { line: lineno, msg };
            match tokens.next() {
                Some("graph") => {
                    if header.is_some() {
                        return Err(parse_err("duplicate graph header".into()));
                    }
                    let rest: Vec<&str> = tokens.collect();
                    if rest.len() != 3 {
                        return Err(parse_err(format!(
                            "expected `graph <n> <m> <start>`, got {line:?}"
                        )));
                    }
                    let n: usize = rest[0]
                        .parse()
                        .map_err(|e| parse_err(format!("bad vertex count: {e}")))?;
                    let m: usize = rest[1]
                        .parse()
                        .map_err(|e| parse_err(format!("bad edge count: {e}")))?;
                    let start: VertexId = rest[2]
                        .parse()
                        .map_err(|e| parse_err(format!("bad start vertex: {e}")))?;
                    header = Some((n, m, start));
                }
                Some("edge") => {
                    if header.is_none() {
                        return Err(parse_err("edge before graph header".into()));
                    }
                    let rest: Vec<&str> = tokens.collect();
                    if rest.len() != 3 {
                        return Err(parse_err(format!(
                            "expected `edge <u> <v> <weight>`, got {line:?}"
                        )));
                    }
                    let u: VertexId = rest[0]
                        .parse()
                        .map_err(|e| parse_err(format!("bad endpoint: {e}")))?;
                    let v: VertexId = rest[1]
                        .parse()
                        .map_err(|e| parse_err(format!("bad endpoint: {e}")))?;
                    let w = parse_weight(rest[2]).map_err(|e| parse_err(e))?;
                    edges.push((u, v, w));
                }
                Some(other) => {
                    return Err(parse_err(format!("unknown directive {other:?}")));
                }
                None => unreachable!("blank lines are skipped"),
            }
        }
        let (n, m, start) = header.ok_or(GraphError::Parse {
            line: 0,
            msg: "missing graph header".into(),
        })?;
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: 0,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        let g = Graph::new(start, edges)?;
        if g.vertex_count() != n {
            return Err(GraphError::Parse {
                line: 0,
                msg: format!("header declares {n} vertices, found {}", g.vertex_count()),
            });
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::{int, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(start: VertexId, edges: &[(VertexId, VertexId, i64)]) -> Graph {
        Graph::new(start, edges.iter().map(|&(u, v, w)| (u, v, int(w)))).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(matches!(
            Graph::new(0, [(1, 1, int(1))]).unwrap_err(),
            GraphError::SelfLoop(1)
        ));
        assert!(matches!(
            Graph::new(0, [(0, 1, int(0))]).unwrap_err(),
            GraphError::NonPositiveWeight { .. }
        ));
        assert!(matches!(
            Graph::new(0, [(0, 1, int(-2))]).unwrap_err(),
            GraphError::NonPositiveWeight { .. }
        ));
        assert!(matches!(
            Graph::new(0, [(0, 1, int(1)), (1, 0, int(2))]).unwrap_err(),
            GraphError::ParallelEdge { u: 0, v: 1 }
        ));
        assert!(matches!(
            Graph::new(0, [(0, 1, int(1)), (2, 3, int(1))]).unwrap_err(),
            GraphError::Disconnected(_)
        ));
        // A single isolated start vertex is a valid (trivial) graph.
        let trivial = Graph::new(7, []).unwrap();
        assert_eq!(trivial.vertex_count(), 1);
        assert_eq!(trivial.vertices(), vec![7]);
        assert_eq!(trivial.classify(), GraphClass::Tree);
    }

    #[test]
    fn edges_are_canonical_and_sorted() {
        let g = g(0, &[(2, 1, 5), (1, 0, 3)]);
        let keys: Vec<(VertexId, VertexId)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(keys, vec![(0, 1), (1, 2)]);
        assert_eq!(g.edge_weight(2, 1), Some(&int(5)));
        assert_eq!(g.edge_weight(1, 2), Some(&int(5)));
        assert_eq!(g.edge_weight(0, 2), None);
        assert_eq!(g.total_weight(), int(8));
    }

    #[test]
    fn classification_by_structure() {
        // Path: tree.
        assert_eq!(g(0, &[(0, 1, 1), (1, 2, 1)]).classify(), GraphClass::Tree);
        // Triangle: unicyclic.
        assert_eq!(
            g(0, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).classify(),
            GraphClass::Unicyclic
        );
        // Two triangles sharing a vertex: cactus.
        let bowtie = g(
            0,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (0, 2, 1),
                (2, 3, 1),
                (3, 4, 1),
                (2, 4, 1),
            ],
        );
        assert_eq!(bowtie.classify(), GraphClass::Cactus);
        // Complete graph on four vertices: general.
        let k4 = g(
            0,
            &[
                (0, 1, 1),
                (0, 2, 1),
                (0, 3, 1),
                (1, 2, 1),
                (1, 3, 1),
                (2, 3, 1),
            ],
        );
        assert_eq!(k4.classify(), GraphClass::General);
        assert!(matches!(
            k4.cycle_decomposition().unwrap_err(),
            GraphError::NotCactus(_)
        ));
    }

    #[test]
    fn decomposition_partitions_edges() {
        // Triangle 0-1-2, bridge 2-3, square 3-4-5-6.
        let g = g(
            0,
            &[
                (0, 1, 1),
                (1, 2, 2),
                (0, 2, 3),
                (2, 3, 4),
                (3, 4, 1),
                (4, 5, 1),
                (5, 6, 1),
                (3, 6, 1),
            ],
        );
        let d = g.cycle_decomposition().unwrap();
        assert_eq!(d.bridges.len(), 1);
        assert_eq!((d.bridges[0].u, d.bridges[0].v), (2, 3));
        assert_eq!(d.cycles.len(), 2);
        // Canonical orientation: smallest vertex first, toward smaller neighbor.
        assert_eq!(d.cycles[0].vertices, vec![0, 1, 2]);
        assert_eq!(d.cycles[0].total_length, int(6));
        assert_eq!(d.cycles[1].vertices, vec![3, 4, 5, 6]);
        assert_eq!(d.cycles[1].total_length, int(4));
        // Every edge appears exactly once across cycles and bridges.
        let mut seen: BTreeSet<EdgeKey> = BTreeSet::new();
        for e in d.cycles.iter().flat_map(|c| &c.edges).chain(&d.bridges) {
            assert!(seen.insert(e.key()), "edge {} appears twice", e.key());
        }
        assert_eq!(seen.len(), g.edge_count());
    }

    #[test]
    fn long_edge_requires_strict_majority() {
        let tri = g(0, &[(0, 1, 1), (1, 2, 1), (0, 2, 3)]);
        let d = tri.cycle_decomposition().unwrap();
        let long = d.cycles[0].long_edge().unwrap();
        assert_eq!((long.u, long.v), (0, 2));
        // 2 * 2 = 4 equals |C| = 4: not long.
        let tri = g(0, &[(0, 1, 1), (1, 2, 1), (0, 2, 2)]);
        let d = tri.cycle_decomposition().unwrap();
        assert!(d.cycles[0].long_edge().is_none());
    }

    #[test]
    fn shortest_path_prefers_lexicographic_order() {
        // Diamond with two equal-length routes; [0, 1, 3] beats [0, 2, 3].
        let g = g(0, &[(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)]);
        let (path, len) = g.shortest_path(0, 3).unwrap();
        assert_eq!(path, vec![0, 1, 3]);
        assert_eq!(len, int(2));
        let (path, len) = g.shortest_path(3, 0).unwrap();
        assert_eq!(path, vec![3, 1, 0]);
        assert_eq!(len, int(2));
        assert_eq!(g.shortest_path(2, 2).unwrap(), (vec![2], int(0)));
        assert!(matches!(
            g.shortest_path(0, 9).unwrap_err(),
            GraphError::UnknownVertex(9)
        ));
    }

    #[test]
    fn text_round_trip_is_byte_exact() {
        let g0 = Graph::new(
            2,
            [(0, 1, ratio(7, 2)), (1, 2, int(3)), (0, 2, ratio(1, 6))],
        )
        .unwrap();
        let text = g0.to_text();
        assert_eq!(
            text,
            "graph 3 3 2\nedge 0 1 7/2\nedge 0 2 1/6\nedge 1 2 3/1\n"
        );
        let g1 = Graph::from_text(&text).unwrap();
        assert_eq!(g1.to_text(), text);
        // Comments, blank lines, and bare integer weights are accepted.
        let g2 = Graph::from_text("# demo\n\ngraph 2 1 0\nedge 0 1 4\n").unwrap();
        assert_eq!(g2.edge_weight(0, 1), Some(&int(4)));
    }

    #[test]
    fn text_parse_errors() {
        assert!(matches!(
            Graph::from_text("edge 0 1 1\n").unwrap_err(),
            GraphError::Parse { line: 1, .. }
        ));
        assert!(matches!(
            Graph::from_text("graph 2 1 0\nedge 0 1 1/0\n").unwrap_err(),
            GraphError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            Graph::from_text("graph 3 1 0\nedge 0 1 1\n").unwrap_err(),
            GraphError::Parse { .. }
        ));
        assert!(matches!(
            Graph::from_text("graph 2 2 0\nedge 0 1 1\n").unwrap_err(),
            GraphError::Parse { .. }
        ));
        assert!(matches!(
            Graph::from_text("graph 2 1 0\nvertex 0\n").unwrap_err(),
            GraphError::Parse { .. }
        ));
        assert!(matches!(
            Graph::from_text("").unwrap_err(),
            GraphError::Parse { .. }
        ));
    }

    /// Every simple path from `from` to `to`, found by exhaustive search.
    fn all_simple_paths(g: &Graph, from: VertexId, to: VertexId) -> Vec<(Vec<VertexId>, Weight)> {
        fn rec(
            g: &Graph,
            cur: VertexId,
            to: VertexId,
            path: &mut Vec<VertexId>,
            cost: Weight,
            out: &mut Vec<(Vec<VertexId>, Weight)>,
        ) {
            if cur == to {
                out.push((path.clone(), cost));
                return;
            }
            let nbrs: Vec<(VertexId, Weight)> = g
                .neighbors(cur)
                .unwrap()
                .iter()
                .map(|(&z, w)| (z, w.clone()))
                .collect();
            for (z, w) in nbrs {
                if path.contains(&z) {
                    continue;
                }
                path.push(z);
                rec(g, z, to, path, &cost + &w, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        rec(g, from, to, &mut vec![from], Weight::zero(), &mut out);
        out
    }

    fn random_connected_graph(rng: &mut ChaCha8Rng, n: u32) -> Graph {
        let mut edges: Vec<(VertexId, VertexId, Weight)> = Vec::new();
        for v in 1..n {
            let p = rng.gen_range(0..v);
            edges.push((p, v, int(rng.gen_range(1..=9))));
        }
        let extra = rng.gen_range(0..=n);
        for _ in 0..extra {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v
                && edges
                    .iter()
                    .all(|&(a, b, _)| EdgeKey::new(a, b) != EdgeKey::new(u, v))
            {
                edges.push((u, v, int(rng.gen_range(1..=9))));
            }
        }
        Graph::new(0, edges).unwrap()
    }

    #[test]
    fn shortest_path_matches_exhaustive_search() {
        for seed in 0..30u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(2..=8);
            let g = random_connected_graph(&mut rng, n);
            for u in g.vertices() {
                for v in g.vertices() {
                    let (path, len) = g.shortest_path(u, v).unwrap();
                    let all = all_simple_paths(&g, u, v);
                    let best = all.iter().map(|(_, c)| c).min().unwrap().clone();
                    assert_eq!(len, best, "distance mismatch {u}->{v} seed {seed}");
                    let lex_best = all
                        .iter()
                        .filter(|(_, c)| *c == best)
                        .map(|(p, _)| p)
                        .min()
                        .unwrap();
                    assert_eq!(&path, lex_best, "path mismatch {u}->{v} seed {seed}");
                    assert_eq!(g.distance(u, v).unwrap(), best);
                    assert_eq!(g.distance(v, u).unwrap(), best);
                }
            }
        }
    }
}
