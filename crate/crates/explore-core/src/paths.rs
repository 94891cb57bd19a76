//! Shared shortest-path machinery over adjacency maps.
//!
//! Both the full-knowledge graph queries and the fog-of-war engine need
//! Dijkstra searches in which only a subset of vertices may be passed
//! *through* (e.g. already-visited vertices), while others may only terminate
//! a path (e.g. the unvisited tip of a revealed edge). The `expand` predicate
//! controls which vertices relax their outgoing edges; the `edge_ok`
//! predicate filters usable edges.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num_traits::Zero;

use crate::graph::VertexId;
use crate::weight::Weight;

pub(crate) type Adjacency = BTreeMap<VertexId, BTreeMap<VertexId, Weight>>;

/// Single-source shortest distances from `source`.
///
/// The source always relaxes its (permitted) edges; any other vertex `v` gets
/// a final distance when popped but relaxes onward edges only if `expand(v)`
/// holds. Edge `u -> z` is considered only if `edge_ok(u, z)` holds.
pub(crate) fn distances<E, F>(
    adj: &Adjacency,
    source: VertexId,
    mut expand: E,
    mut edge_ok: F,
) -> BTreeMap<VertexId, Weight>
where
    E: FnMut(VertexId) -> bool,
    F: FnMut(VertexId, VertexId) -> bool,
{
    let mut dist: BTreeMap<VertexId, Weight> = BTreeMap::new();
    let mut heap: BinaryHeap<Reverse<(Weight, VertexId)>> = BinaryHeap::new();
    dist.insert(source, Weight::zero());
    heap.push(Reverse((Weight::zero(), source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist.get(&u) != Some(&d) {
            continue; // stale heap entry
        }
        if u != source && !expand(u) {
            continue; // terminal vertex: keep its distance, do not pass through
        }
        let Some(nbrs) = adj.get(&u) else { continue };
        for (&z, w) in nbrs {
            if !edge_ok(u, z) {
                continue;
            }
            let nd = &d + w;
            let better = match dist.get(&z) {
                Some(old) => nd < *old,
                None => true,
            };
            if better {
                dist.insert(z, nd.clone());
                heap.push(Reverse((nd, z)));
            }
        }
    }
    dist
}

/// Lexicographically smallest shortest path from `from` to `to`, as
/// `(vertex sequence, total length)`, or `None` if unreachable.
///
/// Among all minimum-length paths the returned vertex sequence is smallest in
/// lexicographic order. Interior vertices must satisfy `expand`; the
/// endpoints need not (matching `distances`, where a non-expandable vertex
/// may end a path but not continue one).
pub(crate) fn lex_shortest_path<E, F>(
    adj: &Adjacency,
    from: VertexId,
    to: VertexId,
    mut expand: E,
    mut edge_ok: F,
) -> Option<(Vec<VertexId>, Weight)>
where
    E: FnMut(VertexId) -> bool,
    F: FnMut(VertexId, VertexId) -> bool,
{
    if from == to {
        return Some((vec![from], Weight::zero()));
    }
    // Distances *to* `to`, walking edges backwards.
    let dist_to = distances(adj, to, &mut expand, |u, z| edge_ok(z, u));
    let total = dist_to.get(&from)?.clone();
    // Greedy forward walk: at every step take the smallest next vertex that
    // still lies on some shortest path. This yields the lexicographic minimum
    // because a candidate continuation exists exactly when the remaining
    // distance decreases by the edge weight.
    let mut path = vec![from];
    let mut cur = from;
    let mut remaining = total.clone();
    while cur != to {
        let nbrs = adj.get(&cur)?;
        let mut chosen: Option<VertexId> = None;
        for (&z, w) in nbrs {
            if !edge_ok(cur, z) {
                continue;
            }
            if z != to && !expand(z) {
                continue;
            }
            if let Some(dz) = dist_to.get(&z) {
                if w + dz == remaining {
                    chosen = Some(z);
                    break;
                }
            }
        }
        let z = chosen?;
        remaining -= &nbrs[&z];
        path.push(z);
        cur = z;
    }
    Some((path, total))
}
