//! Offline optimal tours: a closed form for cactus graphs driven by the
//! per-cycle long-edge rule, and an exact subset-DP oracle on the
//! shortest-path metric closure for cross-validation on small graphs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::graph::{Cycle, Edge, Graph, GraphClass};
use crate::weight::Weight;

/// How an optimum was computed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OptMethod {
    CactusClosedForm,
    ExactDp,
}

/// One cycle's share of the cactus closed form.
#[derive(Clone, Debug)]
pub struct CycleContribution {
    pub cycle: Cycle,
    /// The cycle's long edge (strictly more than half the cycle length),
    /// if it has one; the optimal tour skips exactly this edge.
    pub long_edge: Option<Edge>,
    /// `min(|C|, 2 * (|C| - max edge))`: the cycle's edges contribute this
    /// much to the optimal tour.
    pub contribution: Weight,
}

/// An offline optimum with its derivation.
#[derive(Clone, Debug)]
pub struct OptResult {
    pub length: Weight,
    pub method: OptMethod,
    /// Per-cycle breakdown; empty for the exact-DP method.
    pub per_cycle: Vec<CycleContribution>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OptError {
    #[error("the closed form applies to trees, unicyclic graphs, and cacti only")]
    NotCactus,
    #[error("graph has {vertices} vertices, exceeding the exact-solver limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
}

/// Default vertex limit for [`opt_exact`]: keeps the subset DP
/// (`2^n * n^2` states) well under a second.
pub const DEFAULT_EXACT_LIMIT: usize = 14;

/// Optimal closed tour length on a tree, unicyclic graph, or cactus.
///
/// Every bridge is traversed twice. A cycle with a long edge (one of more
/// than half the cycle's total length) is cheapest covered by walking in and
/// out along everything else, dropping the long edge: `2 * (|C| - max)`.
/// Otherwise the cycle is traversed once: `|C|`. The two cases fuse into
/// `min(|C|, 2 * (|C| - max))`, with ties (max exactly half) giving equal
/// values either way.
pub fn opt_cactus(g: &Graph) -> Result<OptResult, OptError> {
    if g.classify() == GraphClass::General {
        return Err(OptError::NotCactus);
    }
    let decomp = g
        .cycle_decomposition()
        .expect("trees, unicyclic graphs, and cacti decompose");
    let mut length = Weight::zero();
    for bridge in &decomp.bridges {
        length += &bridge.weight + &bridge.weight;
    }
    let mut per_cycle = Vec::new();
    for cycle in decomp.cycles {
        let max = cycle
            .edges
            .iter()
            .map(|e| e.weight.clone())
            .max()
            .expect("cycles have edges");
        let once = cycle.total_length.clone();
        let skip_max = (&once - &max) * Weight::from_integer(2.into());
        let contribution = once.min(skip_max);
        length += &contribution;
        per_cycle.push(CycleContribution {
            long_edge: cycle.long_edge().cloned(),
            cycle,
            contribution,
        });
    }
    Ok(OptResult {
        length,
        method: OptMethod::CactusClosedForm,
        per_cycle,
    })
}

/// Exact optimal closed tour length by dynamic programming over vertex
/// subsets on the shortest-path metric closure. The closure encodes
/// revisits, so the DP may treat the tour as a simple cycle. Refuses graphs
/// with more than `limit` vertices rather than approximating.
pub fn opt_exact(g: &Graph, limit: usize) -> Result<OptResult, OptError> {
    let vs = g.vertices();
    let n = vs.len();
    if n > limit {
        return Err(OptError::TooLarge { vertices: n, limit });
    }
    if n <= 1 {
        return Ok(OptResult {
            length: Weight::zero(),
            method: OptMethod::ExactDp,
            per_cycle: Vec::new(),
        });
    }

    // Metric closure, rescaled to integers by the common denominator.
    let closure: Vec<Vec<Weight>> = vs
        .iter()
        .map(|&u| {
            let d = g.distances_from(u).expect("graph is connected");
            vs.iter().map(|v| d[v].clone()).collect()
        })
        .collect();
    let mut denom = BigInt::one();
    for row in &closure {
        for w in row {
            denom = denom.lcm(w.denom());
        }
    }
    let dist: Vec<Vec<BigInt>> = closure
        .iter()
        .map(|row| {
            row.iter()
                .map(|w| (w * Weight::from_integer(denom.clone())).to_integer())
                .collect()
        })
        .collect();

    // dp[mask][j]: cheapest path from vertex 0 visiting exactly `mask`,
    // ending at j. The anchor 0 is in every mask.
    let full = 1usize << n;
    let mut dp: Vec<Vec<Option<BigInt>>> = vec![vec![None; n]; full];
    dp[1][0] = Some(BigInt::zero());
    for mask in 1..full {
        if mask & 1 == 0 {
            continue;
        }
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let Some(cur) = dp[mask][j].clone() else {
                continue;
            };
            for (k, dk) in dist[j].iter().enumerate() {
                if mask & (1 << k) != 0 {
                    continue;
                }
                let cand = &cur + dk;
                let slot = &mut dp[mask | (1 << k)][k];
                if slot.as_ref().map_or(true, |best| cand < *best) {
                    *slot = Some(cand);
                }
            }
        }
    }
    let best = (0..n)
        .filter_map(|j| dp[full - 1][j].clone().map(|c| c + &dist[j][0]))
        .min()
        .expect("full mask reachable in a connected graph");
    Ok(OptResult {
        length: Weight::new(best, denom),
        method: OptMethod::ExactDp,
        per_cycle: Vec::new(),
    })
}
