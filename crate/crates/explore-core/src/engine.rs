//! The fog-of-war exploration engine.
//!
//! An [`Exploration`] wraps a hidden [`Graph`] and enforces the reveal rules:
//! the agent sees exactly the edges incident to vertices it has visited, may
//! move only along revealed edges, and pays every edge weight it moves over.
//! The engine records the tour walked so far and a per-edge cost ledger that
//! strategies use to attribute their spending.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{Edge, EdgeKey, Graph, VertexId};
use crate::paths;
use crate::weight::Weight;
use num_traits::Zero;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("vertex {0} has not been visited")]
    NotVisited(VertexId),
    #[error("vertex {0} is not part of the revealed subgraph")]
    NotKnown(VertexId),
    #[error("vertex {0} does not belong to the graph")]
    UnknownVertex(VertexId),
    #[error("no walkable path from {from} to {to} in the revealed subgraph")]
    NoWalkablePath { from: VertexId, to: VertexId },
    #[error("edge {from}-{to} is not a boundary edge")]
    NotBoundary { from: VertexId, to: VertexId },
    #[error("agent is at {at}, expected to be at {expected}")]
    NotAtEdgeStart { at: VertexId, expected: VertexId },
    #[error("edge {from}-{to} does not exist")]
    UnknownEdge { from: VertexId, to: VertexId },
}

/// A revealed edge from a visited vertex to an unvisited one. `from` is
/// always the visited endpoint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryEdge {
    pub from: VertexId,
    pub to: VertexId,
    pub weight: Weight,
}

impl BoundaryEdge {
    pub fn key(&self) -> EdgeKey {
        EdgeKey::new(self.from, self.to)
    }
}

/// One move along an edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TourStep {
    pub from: VertexId,
    pub to: VertexId,
    pub weight: Weight,
}

/// The walk performed so far: contiguous steps starting at the start vertex.
#[derive(Clone, Debug)]
pub struct Tour {
    pub start: VertexId,
    pub steps: Vec<TourStep>,
    pub total: Weight,
}

impl Tour {
    fn new(start: VertexId) -> Self {
        Tour {
            start,
            steps: Vec::new(),
            total: Weight::zero(),
        }
    }

    fn push(&mut self, from: VertexId, to: VertexId, weight: Weight) {
        debug_assert_eq!(self.end(), from, "tour steps must be contiguous");
        self.total += &weight;
        self.steps.push(TourStep { from, to, weight });
    }

    /// Current endpoint of the walk.
    pub fn end(&self) -> VertexId {
        self.steps.last().map_or(self.start, |s| s.to)
    }

    /// A tour is closed when it ends where it started.
    pub fn is_closed(&self) -> bool {
        self.end() == self.start
    }

    /// Plain text trace: one `step <from> <to> <p>/<q>` line per move,
    /// followed by a `total <p>/<q>` line.
    pub fn render_trace(&self) -> String {
        use crate::weight::format_weight;
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format!(
                "step {} {} {}\n",
                s.from,
                s.to,
                format_weight(&s.weight)
            ));
        }
        out.push_str(&format!("total {}\n", format_weight(&self.total)));
        out
    }
}

/// Per-edge cost accounting. Strategies decide how to attribute costs; the
/// ledger records amounts and how many separate charges each edge received.
#[derive(Clone, Debug, Default)]
pub struct ChargeLedger {
    entries: BTreeMap<EdgeKey, ChargeEntry>,
}

#[derive(Clone, Debug)]
pub struct ChargeEntry {
    pub total: Weight,
    pub writes: u32,
}

impl ChargeLedger {
    fn charge(&mut self, key: EdgeKey, amount: Weight) {
        let e = self.entries.entry(key).or_insert_with(|| ChargeEntry {
            total: Weight::zero(),
            writes: 0,
        });
        e.total += amount;
        e.writes += 1;
    }

    pub fn get(&self, key: EdgeKey) -> Option<&ChargeEntry> {
        self.entries.get(&key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeKey, &ChargeEntry)> {
        self.entries.iter()
    }

    pub fn total(&self) -> Weight {
        self.entries.values().map(|e| e.total.clone()).sum()
    }
}

/// Exploration state over a hidden graph.
pub struct Exploration<'g> {
    graph: &'g Graph,
    visited: BTreeSet<VertexId>,
    position: VertexId,
    tour: Tour,
    ledger: ChargeLedger,
}

impl<'g> Exploration<'g> {
    /// Begin at the graph's start vertex; the start counts as visited and its
    /// incident edges are revealed.
    pub fn start(graph: &'g Graph) -> Self {
        let s = graph.start();
        Exploration {
            graph,
            visited: BTreeSet::from([s]),
            position: s,
            tour: Tour::new(s),
            ledger: ChargeLedger::default(),
        }
    }

    pub fn position(&self) -> VertexId {
        self.position
    }

    pub fn visited(&self) -> &BTreeSet<VertexId> {
        &self.visited
    }

    pub fn is_visited(&self, v: VertexId) -> bool {
        self.visited.contains(&v)
    }

    /// All vertices discovered and all edges revealed?
    pub fn is_complete(&self) -> bool {
        self.visited.len() == self.graph.vertex_count()
    }

    pub fn tour(&self) -> &Tour {
        &self.tour
    }

    pub fn ledger(&self) -> &ChargeLedger {
        &self.ledger
    }

    /// Edges revealed so far: those with at least one visited endpoint,
    /// in ascending `(u, v)` order.
    pub fn known_edges(&self) -> Vec<Edge> {
        self.graph
            .edges()
            .iter()
            .filter(|e| self.visited.contains(&e.u) || self.visited.contains(&e.v))
            .cloned()
            .collect()
    }

    /// Revealed edges leading out of the visited region, oriented
    /// visited -> unvisited and sorted by `(from, to)`.
    pub fn boundary_edges(&self) -> Vec<BoundaryEdge> {
        let mut out = Vec::new();
        for &u in &self.visited {
            for (&z, w) in self.graph.neighbors(u).expect("visited vertex exists") {
                if !self.visited.contains(&z) {
                    out.push(BoundaryEdge {
                        from: u,
                        to: z,
                        weight: w.clone(),
                    });
                }
            }
        }
        out.sort_by_key(|e| (e.from, e.to));
        out
    }

    fn check_known_target(&self, v: VertexId) -> Result<(), EngineError> {
        if !self.graph.has_vertex(v) {
            return Err(EngineError::UnknownVertex(v));
        }
        if self.visited.contains(&v) {
            return Ok(());
        }
        // An unvisited vertex is known only as the tip of a revealed edge.
        let is_tip = self
            .graph
            .neighbors(v)
            .expect("vertex exists")
            .keys()
            .any(|z| self.visited.contains(z));
        if is_tip {
            Ok(())
        } else {
            Err(EngineError::NotKnown(v))
        }
    }

    /// Shortest distances over the revealed subgraph from a visited vertex
    /// `u`. Paths pass through visited vertices only; unvisited tips of
    /// revealed edges appear as terminal entries.
    pub fn known_distances(&self, u: VertexId) -> Result<BTreeMap<VertexId, Weight>, EngineError> {
        if !self.graph.has_vertex(u) {
            return Err(EngineError::UnknownVertex(u));
        }
        if !self.visited.contains(&u) {
            return Err(EngineError::NotVisited(u));
        }
        Ok(paths::distances(
            self.graph.adjacency(),
            u,
            |x| self.visited.contains(&x),
            |_, _| true,
        ))
    }

    /// Shortest known distance from a visited vertex `u` to `v`, which must
    /// be visited or the tip of a revealed edge.
    pub fn known_distance(&self, u: VertexId, v: VertexId) -> Result<Weight, EngineError> {
        let dist = self.known_distances(u)?;
        self.check_known_target(v)?;
        dist.get(&v)
            .cloned()
            .ok_or(EngineError::NoWalkablePath { from: u, to: v })
    }

    /// Lexicographically smallest shortest known path from a visited vertex
    /// `u` to `v` (visited or a revealed tip).
    pub fn known_path(
        &self,
        u: VertexId,
        v: VertexId,
    ) -> Result<(Vec<VertexId>, Weight), EngineError> {
        if !self.graph.has_vertex(u) {
            return Err(EngineError::UnknownVertex(u));
        }
        if !self.visited.contains(&u) {
            return Err(EngineError::NotVisited(u));
        }
        self.check_known_target(v)?;
        paths::lex_shortest_path(
            self.graph.adjacency(),
            u,
            v,
            |x| self.visited.contains(&x),
            |_, _| true,
        )
        .ok_or(EngineError::NoWalkablePath { from: u, to: v })
    }

    /// Move the agent to a visited vertex along the lexicographically
    /// smallest shortest known path, recording every step. Returns the cost.
    pub fn walk(&mut self, target: VertexId) -> Result<Weight, EngineError> {
        if !self.graph.has_vertex(target) {
            return Err(EngineError::UnknownVertex(target));
        }
        if !self.visited.contains(&target) {
            return Err(EngineError::NotVisited(target));
        }
        let (path, cost) = self.known_path(self.position, target)?;
        for pair in path.windows(2) {
            let w = self
                .graph
                .edge_weight(pair[0], pair[1])
                .expect("path edge exists")
                .clone();
            self.tour.push(pair[0], pair[1], w);
        }
        self.position = target;
        Ok(cost)
    }

    /// Traverse a boundary edge from its visited endpoint (where the agent
    /// must currently stand) to its unvisited tip, visiting the tip.
    pub fn traverse(&mut self, edge: &BoundaryEdge) -> Result<(), EngineError> {
        let w = self
            .graph
            .edge_weight(edge.from, edge.to)
            .ok_or(EngineError::UnknownEdge {
                from: edge.from,
                to: edge.to,
            })?;
        if *w != edge.weight
            || !self.visited.contains(&edge.from)
            || self.visited.contains(&edge.to)
        {
            return Err(EngineError::NotBoundary {
                from: edge.from,
                to: edge.to,
            });
        }
        if self.position != edge.from {
            return Err(EngineError::NotAtEdgeStart {
                at: self.position,
                expected: edge.from,
            });
        }
        self.tour.push(edge.from, edge.to, w.clone());
        self.visited.insert(edge.to);
        self.position = edge.to;
        Ok(())
    }

    /// Attribute `amount` of cost to an existing edge in the ledger.
    pub fn charge(&mut self, u: VertexId, v: VertexId, amount: Weight) -> Result<(), EngineError> {
        if self.graph.edge_weight(u, v).is_none() {
            return Err(EngineError::UnknownEdge { from: u, to: v });
        }
        self.ledger.charge(EdgeKey::new(u, v), amount);
        Ok(())
    }
}
