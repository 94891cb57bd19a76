//! Run audits: independent re-checks of recorded runs against the
//! structural guarantees the strategies are supposed to maintain.
//!
//! The audits never trust the strategy's own bookkeeping beyond the raw
//! event record: tours are re-walked step by step, the per-edge ledger is
//! re-summed, and the blocking iteration log is replayed chronologically
//! against an independently maintained visited set.

use std::collections::BTreeMap;
use std::fmt;

use crate::engine::{ChargeLedger, Tour};
use crate::graph::{Cycle, Edge, EdgeKey, Graph, GraphClass, VertexId};
use crate::strategies::{BlockingOutcome, Delta};
use crate::weight::display_weight;

/// All simple cycles of a graph, with per-edge membership and the
/// identified overlong edge of each cycle (an edge heavier than the rest of
/// its cycle combined), if any.
pub struct CycleCatalog {
    pub cycles: Vec<Cycle>,
    membership: BTreeMap<EdgeKey, Vec<usize>>,
    long: Vec<Option<EdgeKey>>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("cycle enumeration exceeded {limit} cycles")]
    TooManyCycles { limit: usize },
    #[error("cycle enumeration exceeded {limit} search steps")]
    TooManySteps { limit: usize },
}

const MAX_CYCLES: usize = 20_000;
const MAX_STEPS: usize = 2_000_000;

impl CycleCatalog {
    /// Catalog every simple cycle. Cactus-like graphs read their cycles off
    /// the edge partition directly; general graphs get a bounded
    /// smallest-root path search (each cycle is found once, rooted at its
    /// minimum vertex with the orientation fixed by its second vertex).
    pub fn build(g: &Graph) -> Result<CycleCatalog, CatalogError> {
        let cycles = match g.classify() {
            GraphClass::Tree => Vec::new(),
            GraphClass::Unicyclic | GraphClass::Cactus => {
                g.cycle_decomposition()
                    .expect("cactus classes decompose")
                    .cycles
            }
            GraphClass::General => enumerate_cycles(g)?,
        };
        let mut membership: BTreeMap<EdgeKey, Vec<usize>> = BTreeMap::new();
        let mut long = Vec::with_capacity(cycles.len());
        for (i, c) in cycles.iter().enumerate() {
            for e in &c.edges {
                membership.entry(e.key()).or_default().push(i);
            }
            long.push(c.long_edge().map(Edge::key));
        }
        Ok(CycleCatalog {
            cycles,
            membership,
            long,
        })
    }

    /// Indices of the cycles containing this edge.
    pub fn cycles_through(&self, key: EdgeKey) -> &[usize] {
        self.membership.get(&key).map_or(&[], Vec::as_slice)
    }

    /// Cycles in which this edge is the overlong edge.
    pub fn long_in(&self, key: EdgeKey) -> impl Iterator<Item = usize> + '_ {
        self.cycles_through(key)
            .iter()
            .copied()
            .filter(move |&i| self.long[i] == Some(key))
    }
}

fn enumerate_cycles(g: &Graph) -> Result<Vec<Cycle>, CatalogError> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for e in g.edges() {
        adj.entry(e.u).or_default().push(e.v);
        adj.entry(e.v).or_default().push(e.u);
    }
    let mut cycles = Vec::new();
    let mut steps = 0usize;

    fn dfs(
        g: &Graph,
        adj: &BTreeMap<VertexId, Vec<VertexId>>,
        root: VertexId,
        path: &mut Vec<VertexId>,
        cycles: &mut Vec<Cycle>,
        steps: &mut usize,
    ) -> Result<(), CatalogError> {
        *steps += 1;
        if *steps > MAX_STEPS {
            return Err(CatalogError::TooManySteps { limit: MAX_STEPS });
        }
        let here = *path.last().expect("path is nonempty");
        for &next in &adj[&here] {
            if next == root {
                // Count each cycle once: fix the orientation so the root's
                // smaller cycle neighbor comes first.
                if path.len() >= 3 && path[1] < here {
                    if cycles.len() == MAX_CYCLES {
                        return Err(CatalogError::TooManyCycles { limit: MAX_CYCLES });
                    }
                    cycles.push(make_cycle(g, path));
                }
            } else if next > root && !path.contains(&next) {
                path.push(next);
                dfs(g, adj, root, path, cycles, steps)?;
                path.pop();
            }
        }
        Ok(())
    }

    for &root in adj.keys() {
        let mut path = vec![root];
        dfs(g, &adj, root, &mut path, &mut cycles, &mut steps)?;
    }
    Ok(cycles)
}

fn make_cycle(g: &Graph, vertices: &[VertexId]) -> Cycle {
    let mut edges = Vec::with_capacity(vertices.len());
    let mut total = crate::weight::int(0);
    for i in 0..vertices.len() {
        let (u, v) = (vertices[i], vertices[(i + 1) % vertices.len()]);
        let w = g.edge_weight(u, v).expect("cycle edges exist").clone();
        total += &w;
        edges.push(Edge {
            u: u.min(v),
            v: u.max(v),
            weight: w,
        });
    }
    Cycle {
        vertices: vertices.to_vec(),
        edges,
        total_length: total,
    }
}

/// What a violation is about, so callers can assert on specific guarantees.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ViolationKind {
    /// Tour shape: contiguity, closure, step weights, completeness.
    Tour,
    /// Ledger consistency: totals and charged edges.
    Ledger,
    /// An edge charged in more than one iteration.
    WriteOnce,
    /// A charge above (4 + 2*delta) times the edge weight.
    ChargeBound,
    /// An overlong edge evaluated as unblocked although going around its
    /// cycle is not strictly cheaper.
    UnblockedLongEdge,
    /// An overlong edge traversed while its cycle had another boundary edge.
    LongEdgeTraversal,
    /// The iteration log is inconsistent with the replayed visited set.
    Replay,
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub kind: ViolationKind,
    pub msg: String,
}

/// Result of an audit: a (hopefully empty) list of violations, plus counts
/// of how many individual checks ran, so "clean" is distinguishable from
/// "vacuous".
#[derive(Debug, Default)]
pub struct AuditReport {
    pub violations: Vec<Violation>,
    pub evals_checked: usize,
    pub traversals_checked: usize,
    pub charges_checked: usize,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count_of(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }

    fn push(&mut self, kind: ViolationKind, msg: String) {
        self.violations.push(Violation { kind, msg });
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            write!(
                f,
                "clean ({} evals, {} traversals, {} charges)",
                self.evals_checked, self.traversals_checked, self.charges_checked
            )
        } else {
            writeln!(f, "{} violation(s):", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  {}", v.msg)?;
            }
            Ok(())
        }
    }
}

/// Re-walk a recorded tour against the actual graph: contiguous steps, real
/// edges with true weights, closed at the start, every vertex visited, and
/// the ledger's grand total equal to the tour's.
pub fn audit_tour(g: &Graph, tour: &Tour, ledger: &ChargeLedger, report: &mut AuditReport) {
    let mut at = g.start();
    if tour.start != g.start() {
        report.push(
            ViolationKind::Tour,
            format!(
                "tour starts at {} but the graph starts at {}",
                tour.start,
                g.start()
            ),
        );
    }
    let mut visited = std::collections::BTreeSet::from([at]);
    let mut total = crate::weight::int(0);
    for (i, s) in tour.steps.iter().enumerate() {
        if s.from != at {
            report.push(
                ViolationKind::Tour,
                format!("step {i} starts at {} but the walk is at {at}", s.from),
            );
        }
        match g.edge_weight(s.from, s.to) {
            Some(w) if *w == s.weight => {}
            Some(w) => report.push(
                ViolationKind::Tour,
                format!(
                    "step {i} records weight {} for edge {}-{} of weight {}",
                    display_weight(&s.weight),
                    s.from,
                    s.to,
                    display_weight(w)
                ),
            ),
            None => report.push(
                ViolationKind::Tour,
                format!("step {i} moves along nonexistent edge {}-{}", s.from, s.to),
            ),
        }
        total += &s.weight;
        visited.insert(s.to);
        at = s.to;
    }
    if at != tour.start {
        report.push(
            ViolationKind::Tour,
            format!("tour ends at {at}, not back at {}", tour.start),
        );
    }
    if total != tour.total {
        report.push(
            ViolationKind::Tour,
            format!(
                "tour total {} does not match its steps' sum {}",
                display_weight(&tour.total),
                display_weight(&total)
            ),
        );
    }
    for v in g.vertices() {
        if !visited.contains(&v) {
            report.push(ViolationKind::Tour, format!("vertex {v} was never visited"));
        }
    }
    let ledger_total = ledger.total();
    if ledger_total != tour.total {
        report.push(
            ViolationKind::Ledger,
            format!(
                "ledger total {} does not match tour total {}",
                display_weight(&ledger_total),
                display_weight(&tour.total)
            ),
        );
    }
    for (key, entry) in ledger.iter() {
        report.charges_checked += 1;
        if g.edge_weight(key.a, key.b).is_none() {
            report.push(
                ViolationKind::Ledger,
                format!("ledger charges nonexistent edge {}-{}", key.a, key.b),
            );
        }
        if entry.total < crate::weight::int(0) {
            report.push(
                ViolationKind::Ledger,
                format!(
                    "edge {}-{} carries a negative charge {}",
                    key.a,
                    key.b,
                    display_weight(&entry.total)
                ),
            );
        }
    }
}

/// Audit a full blocking run:
///
/// * the tour/ledger checks of [`audit_tour`];
/// * write-once charging — each edge is charged in at most one iteration;
/// * for `delta > 0`, every edge's charge is at most `(4 + 2*delta)` times
///   its weight, exactly compared;
/// * replaying the iteration log against an independent visited set:
///   whenever an evaluation found an edge unblocked and that edge is the
///   overlong edge of some cycle, the strict inequality
///   `(1 + delta) * |e| < |C| - |e|` must hold (going the other way around
///   the cycle beats the double back-and-forth the edge would risk);
/// * for `delta > 0` additionally: an overlong edge is never traversed
///   while its cycle still has another partially explored edge.
pub fn audit_blocking(
    g: &Graph,
    delta: &Delta,
    out: &BlockingOutcome,
    catalog: &CycleCatalog,
) -> AuditReport {
    let mut report = AuditReport::default();
    audit_tour(g, &out.tour, &out.ledger, &mut report);

    for (key, entry) in out.ledger.iter() {
        if entry.writes > 1 {
            report.push(
                ViolationKind::WriteOnce,
                format!(
                    "edge {}-{} was charged in {} separate iterations",
                    key.a, key.b, entry.writes
                ),
            );
        }
        if delta.is_positive() {
            if let Some(w) = g.edge_weight(key.a, key.b) {
                if delta.cmp_four_plus_two_times(&entry.total, w) == std::cmp::Ordering::Greater {
                    report.push(
                        ViolationKind::ChargeBound,
                        format!(
                            "edge {}-{} of weight {} carries charge {}, above the \
                             (4+2*delta) bound",
                            key.a,
                            key.b,
                            display_weight(w),
                            display_weight(&entry.total)
                        ),
                    );
                }
            }
        }
    }

    // Chronological replay. Iteration entries are appended when their
    // evaluation phase runs, so the log order is evaluation order, and a
    // selecting iteration's traversal happens right before the next entry.
    let mut visited = std::collections::BTreeSet::from([g.start()]);
    for (i, iter) in out.iterations.iter().enumerate() {
        if !visited.contains(&iter.anchor) {
            report.push(
                ViolationKind::Replay,
                format!("iteration {i} anchored at unvisited vertex {}", iter.anchor),
            );
        }
        for eval in &iter.evals {
            let key = eval.edge.key();
            if visited.contains(&eval.edge.to) || !visited.contains(&eval.edge.from) {
                report.push(
                    ViolationKind::Replay,
                    format!(
                        "iteration {i} evaluated {}-{} which was not a boundary edge",
                        eval.edge.from, eval.edge.to
                    ),
                );
            }
            if eval.blocker.is_none() {
                for c in catalog.long_in(key) {
                    report.evals_checked += 1;
                    let cycle = &catalog.cycles[c];
                    let rest = &cycle.total_length - &eval.edge.weight;
                    if delta.cmp_one_plus_times(&rest, &eval.edge.weight)
                        != std::cmp::Ordering::Greater
                    {
                        report.push(
                            ViolationKind::UnblockedLongEdge,
                            format!(
                                "iteration {i} found overlong edge {}-{} (weight {}) \
                                 unblocked although the rest of its cycle is only {}",
                                eval.edge.from,
                                eval.edge.to,
                                display_weight(&eval.edge.weight),
                                display_weight(&rest)
                            ),
                        );
                    }
                }
            }
        }
        if let Some(chosen) = &iter.chosen {
            report.traversals_checked += 1;
            if delta.is_positive() {
                for c in catalog.long_in(chosen.edge.key()) {
                    let cycle = &catalog.cycles[c];
                    let other_boundary = cycle.edges.iter().any(|e| {
                        e.key() != chosen.edge.key()
                            && (visited.contains(&e.u) != visited.contains(&e.v))
                    });
                    if other_boundary {
                        report.push(
                            ViolationKind::LongEdgeTraversal,
                            format!(
                                "iteration {i} traversed overlong edge {}-{} while its \
                                 cycle still had another boundary edge",
                                chosen.edge.from, chosen.edge.to
                            ),
                        );
                    }
                }
            }
            visited.insert(chosen.edge.to);
        }
    }
    if visited.len() != g.vertex_count() {
        report.push(
            ViolationKind::Replay,
            format!(
                "iteration log only accounts for {} of {} vertices",
                visited.len(),
                g.vertex_count()
            ),
        );
    }
    report
}

/// Audit a nearest-neighbor or depth-first run (tour and ledger checks
/// only; those strategies make no per-edge charge guarantees).
pub fn audit_run(g: &Graph, tour: &Tour, ledger: &ChargeLedger) -> AuditReport {
    let mut report = AuditReport::default();
    audit_tour(g, tour, ledger, &mut report);
    report
}
