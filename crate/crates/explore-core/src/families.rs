//! Instance families: adversarial constructions with exact predicted
//! quantities, and seeded random trees, unicyclic graphs, and cacti.
//!
//! Vertex IDs are part of each construction's contract: strategies break
//! ties toward smaller IDs, and every family assigns IDs in the first-visit
//! order its analysis intends, so the adversarial runs are realized
//! deterministically. Each generator's docs state the intended order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeKey, Graph, GraphClass, VertexId};
use crate::opt::opt_cactus;
use crate::weight::{display_weight, format_weight, int, parse_weight, ratio, Weight};

/// Metadata attached to a generated instance: the family name, its
/// parameters, named vertex roles, and exact predicted quantities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InstanceMeta {
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub named: BTreeMap<String, VertexId>,
    pub predictions: BTreeMap<String, Weight>,
}

impl InstanceMeta {
    /// Short identifier, e.g. `doubling_tree[k=3]` or
    /// `random_cactus[n=12,seed=37]`.
    pub fn id(&self) -> String {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!("{}[{}]", self.family, params.join(","))
    }

    /// Line-oriented sidecar: `meta family <name>`, `meta param.<k> <v>`,
    /// `meta named.<role> <id>`, `meta pred.<name> <num>/<den>`.
    pub fn to_text(&self) -> String {
        let mut out = format!("meta family {}\n", self.family);
        for (k, v) in &self.params {
            out.push_str(&format!("meta param.{k} {v}\n"));
        }
        for (role, v) in &self.named {
            out.push_str(&format!("meta named.{role} {v}\n"));
        }
        for (name, w) in &self.predictions {
            out.push_str(&format!("meta pred.{name} {}\n", format_weight(w)));
        }
        out
    }

    /// Parse the sidecar format written by [`InstanceMeta::to_text`].
    /// Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<InstanceMeta, FamilyError> {
        let mut meta = InstanceMeta {
            family: String::new(),
            params: BTreeMap::new(),
            named: BTreeMap::new(),
            predictions: BTreeMap::new(),
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let mut parts = t.splitn(3, ' ');
            let (tag, key, value) = (parts.next(), parts.next(), parts.next());
            let (Some("meta"), Some(key), Some(value)) = (tag, key, value) else {
                return Err(FamilyError::Meta {
                    line,
                    msg: format!("expected `meta <key> <value>`, got {t:?}"),
                });
            };
            if key == "family" {
                meta.family = value.to_string();
            } else if let Some(name) = key.strip_prefix("param.") {
                meta.params.insert(name.to_string(), value.to_string());
            } else if let Some(role) = key.strip_prefix("named.") {
                let id = value.parse::<VertexId>().map_err(|e| FamilyError::Meta {
                    line,
                    msg: format!("bad vertex id {value:?}: {e}"),
                })?;
                meta.named.insert(role.to_string(), id);
            } else if let Some(name) = key.strip_prefix("pred.") {
                let w = parse_weight(value).map_err(|e| FamilyError::Meta { line, msg: e })?;
                meta.predictions.insert(name.to_string(), w);
            } else {
                return Err(FamilyError::Meta {
                    line,
                    msg: format!("unknown meta key {key:?}"),
                });
            }
        }
        if meta.family.is_empty() {
            return Err(FamilyError::Meta {
                line: 0,
                msg: "missing `meta family` line".into(),
            });
        }
        Ok(meta)
    }
}

/// A generated instance: the graph plus its metadata.
#[derive(Clone, Debug)]
pub struct InstanceDescriptor {
    pub graph: Graph,
    pub meta: InstanceMeta,
}

impl InstanceDescriptor {
    pub fn id(&self) -> String {
        self.meta.id()
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family} requires {param} >= {min}, got {got}")]
    TooSmall {
        family: &'static str,
        param: &'static str,
        min: u64,
        got: u64,
    },
    #[error("spiked constructions require delta > -1, got {delta}")]
    DeltaTooSmall { delta: String },
    #[error("meta line {line}: {msg}")]
    Meta { line: usize, msg: String },
}

fn pred(entries: &[(&str, Weight)]) -> BTreeMap<String, Weight> {
    entries
        .iter()
        .map(|(k, w)| (k.to_string(), w.clone()))
        .collect()
}

fn named(entries: &[(&str, VertexId)]) -> BTreeMap<String, VertexId> {
    entries.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn params(entries: &[(&str, String)]) -> BTreeMap<String, String> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

/// Binary doubling tree: level 1 is the path left--right--mid of two unit
/// edges; level k joins two copies of level k-1 with an edge of weight k
/// (right vertex of the first copy to left vertex of the second) and hangs a
/// fresh `mid` vertex on the second copy's left vertex by a unit edge.
///
/// IDs: first copy, then second copy, then `mid` — so nearest-neighbor
/// tie-breaks (smallest ID among equidistant tips) walk the first copy
/// completely, cross to the second, and leave `mid` for last, which makes
/// the attached `nn_cost` formula exact.
///
/// Predictions: `nn_cost` = (k+2)2^k - 2, `opt` = 6*2^k - 2k - 6,
/// `shortest_lr` = 2^(k+1) - k - 2, `total_weight` = 3*2^k - k - 3,
/// `n` = 2^(k+1) - 1.
pub fn doubling_tree(k: u32) -> Result<InstanceDescriptor, FamilyError> {
    if k < 1 {
        return Err(FamilyError::TooSmall {
            family: "doubling_tree",
            param: "k",
            min: 1,
            got: k as u64,
        });
    }

    fn build(k: u32) -> (Vec<(VertexId, VertexId, Weight)>, VertexId, u32) {
        if k == 1 {
            return (vec![(0, 1, int(1)), (1, 2, int(1))], 1, 3);
        }
        let (mut edges, right, size) = build(k - 1);
        let shifted: Vec<_> = edges
            .iter()
            .map(|(u, v, w)| (u + size, v + size, w.clone()))
            .collect();
        edges.extend(shifted);
        let second_left = size;
        let mid = 2 * size;
        edges.push((right, second_left, int(k as i64)));
        edges.push((second_left, mid, int(1)));
        (edges, size + right, 2 * size + 1)
    }

    let (edges, right, n) = build(k);
    let graph = Graph::new(0, edges).expect("construction is a valid tree");
    debug_assert_eq!(graph.classify(), GraphClass::Tree);
    let p2k = 1i64 << k; // 2^k
    let meta = InstanceMeta {
        family: "doubling_tree".into(),
        params: params(&[("k", k.to_string())]),
        named: named(&[("left", 0), ("right", right), ("mid", n - 1)]),
        predictions: pred(&[
            ("nn_cost", int((k as i64 + 2) * p2k - 2)),
            ("opt", int(6 * p2k - 2 * k as i64 - 6)),
            ("shortest_lr", int(2 * p2k - k as i64 - 2)),
            ("total_weight", int(3 * p2k - k as i64 - 3)),
            ("n", int(n as i64)),
        ]),
    };
    Ok(InstanceDescriptor { graph, meta })
}

/// Pieces of one spiked path, with local IDs 0..n-1 (0 = entry).
struct SpikedParts {
    edges: Vec<(VertexId, VertexId, Weight)>,
    n: u32,
    exit: VertexId,
    l: Vec<Weight>,
    k: u32,
    /// Total weight of everything except the `l` edges: 1 + m + m/k.
    support: Weight,
}

/// The graded subdivision parameter: ceil(1 + delta) + 1, always >= 2.
fn subdivision(delta: &Weight) -> Result<u32, FamilyError> {
    let one_plus = int(1) + delta;
    if !one_plus.is_positive() {
        return Err(FamilyError::DeltaTooSmall {
            delta: display_weight(delta),
        });
    }
    let k = (one_plus.ceil().to_integer())
        .to_u32()
        .expect("subdivision parameter fits in u32")
        + 1;
    Ok(k)
}

/// Build one spiked path: a unit entry edge, a path of m*k edges of length
/// 1/k, m spike edges of length 1/k hanging off the path (the i-th spike
/// base sits at distance i - 1/k before the path's far end), and m
/// geometrically growing edges l_1..l_m continuing beyond the path, with
/// |l_i| = (i + sum of earlier l) / (1 + delta).
///
/// IDs in intended first-visit order: entry, the path vertices, then
/// alternating spike tip i / far endpoint of l_i. With this numbering each
/// l_i is evaluated while exactly spike i's tip sits at known distance
/// (1+delta)|l_i|, so the blocking strategy defers l_i, picks up spike i on
/// its way back, and then pays the full detour — the charge on each l_i
/// comes out to exactly (4+2delta)|l_i|.
fn build_spiked(m: u32, delta: &Weight) -> Result<SpikedParts, FamilyError> {
    if m < 1 {
        return Err(FamilyError::TooSmall {
            family: "spiked_path",
            param: "m",
            min: 1,
            got: m as u64,
        });
    }
    let k = subdivision(delta)?;
    let one_plus = int(1) + delta;
    let step = ratio(1, k as i64);

    let mut edges: Vec<(VertexId, VertexId, Weight)> = Vec::new();
    edges.push((0, 1, int(1))); // entry edge
    let path_first = 1; // id of the path's near end
    let path_last = path_first + m * k; // id of the far end
    for j in 0..(m * k) {
        edges.push((path_first + j, path_first + j + 1, step.clone()));
    }
    let tip = |i: u32| path_last + 2 * i - 1;
    let far = |i: u32| path_last + 2 * i;
    for i in 1..=m {
        let base = (m - i) * k + 2; // path vertex at distance i - 1/k from the far end
        edges.push((base, tip(i), step.clone()));
    }
    let mut l: Vec<Weight> = Vec::new();
    let mut l_sum = Weight::zero();
    for i in 1..=m {
        let li = (int(i as i64) + &l_sum) / &one_plus;
        let u = if i == 1 { path_last } else { far(i - 1) };
        edges.push((u, far(i), li.clone()));
        l_sum += &li;
        l.push(li);
    }
    let support = int(1) + int(m as i64) + int(m as i64) * &step;
    Ok(SpikedParts {
        edges,
        n: m * k + 2 * m + 2,
        exit: far(m),
        l,
        k,
        support,
    })
}

/// A single spiked path as a standalone tree instance. Start = entry.
///
/// Predictions: `l_total`, `support_weight` (all non-l edges: 1 + m + m/k),
/// `total_weight`, `opt` (a tree: twice the total weight), `blocking_cost`
/// ((4+2delta) * l_total + 2 * support_weight — each l_i is deferred and
/// charged exactly (4+2delta)|l_i|, everything else exactly twice), `n`.
pub fn spiked_path(m: u32, delta: &Weight) -> Result<InstanceDescriptor, FamilyError> {
    let parts = build_spiked(m, delta)?;
    let l_total: Weight = parts.l.iter().sum();
    let total = &l_total + &parts.support;
    let four_plus = int(4) + int(2) * delta;
    let graph = Graph::new(0, parts.edges).expect("construction is a valid tree");
    debug_assert_eq!(graph.classify(), GraphClass::Tree);
    let meta = InstanceMeta {
        family: "spiked_path".into(),
        params: params(&[("delta", display_weight(delta)), ("m", m.to_string())]),
        named: named(&[("entry", 0), ("exit", parts.exit)]),
        predictions: pred(&[
            ("l_total", l_total.clone()),
            ("support_weight", parts.support.clone()),
            ("total_weight", total.clone()),
            ("opt", int(2) * &total),
            (
                "blocking_cost",
                &four_plus * &l_total + int(2) * &parts.support,
            ),
            ("n", int(parts.n as i64)),
        ]),
    };
    Ok(InstanceDescriptor { graph, meta })
}

/// Two spiked paths closed into one large cycle through two degree-3 hub
/// vertices, all four connections unit edges: start--hub_far, start--(first
/// path), (first exit)--hub_near, hub_near--(second entry), (second
/// exit)--hub_far.
///
/// IDs: start (= first entry), first path interior, hub_near, second path
/// (entry first), hub_far last — the blocking strategy walks the first path
/// completely (smaller IDs win the unit-edge tie at the start), discovers
/// hub_near behind the first exit, continues into the second path through
/// its entry, and picks up hub_far at the very end. Both spiked paths then
/// play out exactly as standalone, so the cost is twice the standalone cost
/// plus 6 (three of the four unit hub edges are traversed out-and-back; the
/// start--hub_far edge is only ever crossed inside later shortcuts).
///
/// Predictions: `opt` (closed form on the unicyclic graph), `l_total` (one
/// path's worth), `blocking_cost` (exact, as above), `blocking_cost_lb`
/// ((4+2delta) * 2 * l_total), `n`.
pub fn double_spiked_path(m: u32, delta: &Weight) -> Result<InstanceDescriptor, FamilyError> {
    let parts = build_spiked(m, delta)?;
    let n1 = parts.n;
    let hub_near = n1;
    let shift = n1 + 1;
    let hub_far = 2 * n1 + 1;
    let mut edges = parts.edges.clone();
    edges.extend(
        parts
            .edges
            .iter()
            .map(|(u, v, w)| (u + shift, v + shift, w.clone())),
    );
    edges.push((parts.exit, hub_near, int(1)));
    edges.push((hub_near, shift, int(1)));
    edges.push((shift + parts.exit, hub_far, int(1)));
    edges.push((0, hub_far, int(1)));

    let graph = Graph::new(0, edges).expect("construction is valid");
    debug_assert_eq!(graph.classify(), GraphClass::Unicyclic);
    let l_total: Weight = parts.l.iter().sum();
    let four_plus = int(4) + int(2) * delta;
    let one_sp = &four_plus * &l_total + int(2) * &parts.support;
    let opt = opt_cactus(&graph).expect("unicyclic").length;
    let meta = InstanceMeta {
        family: "double_spiked_path".into(),
        params: params(&[("delta", display_weight(delta)), ("m", m.to_string())]),
        named: named(&[
            ("start", 0),
            ("exit_first", parts.exit),
            ("hub_near", hub_near),
            ("entry_second", shift),
            ("exit_second", shift + parts.exit),
            ("hub_far", hub_far),
        ]),
        predictions: pred(&[
            ("opt", opt),
            ("l_total", l_total.clone()),
            ("blocking_cost", int(2) * &one_sp + int(6)),
            ("blocking_cost_lb", &four_plus * int(2) * &l_total),
            ("n", int((2 * n1 + 2) as i64)),
        ]),
    };
    Ok(InstanceDescriptor { graph, meta })
}

/// One spiked path closed into a cycle: a single hub vertex joined to the
/// path's entry and exit by unit edges.
///
/// IDs: start (= entry), path interior, exit, hub last. The run matches the
/// standalone spiked path except at the very last l edge: once the hub is
/// discovered behind the exit, the walk back from the exit to spike m's tip
/// takes the short way around the cycle (3 + 2/k) instead of retracing
/// l_m, so l_m is charged (2+delta)|l_m| + 3 + 2/k rather than
/// (4+2delta)|l_m| whenever the shortcut is the cheaper side.
///
/// Predictions: `opt`, `l_total`, `blocking_cost` (exact formula above),
/// `n`.
pub fn spiked_cycle(m: u32, delta: &Weight) -> Result<InstanceDescriptor, FamilyError> {
    let parts = build_spiked(m, delta)?;
    let hub = parts.n;
    let mut edges = parts.edges.clone();
    edges.push((parts.exit, hub, int(1)));
    edges.push((0, hub, int(1)));

    let graph = Graph::new(0, edges).expect("construction is valid");
    debug_assert_eq!(graph.classify(), GraphClass::Unicyclic);
    let l_total: Weight = parts.l.iter().sum();
    let four_plus = int(4) + int(2) * delta;
    let one_plus = int(1) + delta;
    let l_last = parts.l.last().expect("m >= 1").clone();
    let around = int(3) + ratio(2, parts.k as i64);
    let retrace = &l_last + &one_plus * &l_last;
    let l_head: Weight = parts.l.iter().take(parts.l.len() - 1).sum();
    let blocking_cost = &four_plus * &l_head
        + (&one_plus * &l_last + &l_last + retrace.min(around))
        + int(2) * &parts.support
        + int(2);
    let opt = opt_cactus(&graph).expect("unicyclic").length;
    let meta = InstanceMeta {
        family: "spiked_cycle".into(),
        params: params(&[("delta", display_weight(delta)), ("m", m.to_string())]),
        named: named(&[("start", 0), ("exit", parts.exit), ("hub", hub)]),
        predictions: pred(&[
            ("opt", opt),
            ("l_total", l_total),
            ("blocking_cost", blocking_cost),
            ("n", int((parts.n + 1) as i64)),
        ]),
    };
    Ok(InstanceDescriptor { graph, meta })
}

/// Fan: a backbone path of m unit edges from the start to a far vertex p,
/// plus m petals — each petal runs start --1-- a_i --1-- b_i --m-- p.
///
/// IDs: start, backbone interior, p, then b_1, a_1, b_2, a_2, ... in petal
/// order. The blocking strategy walks the unit backbone first (smallest tip
/// IDs), then from p takes each length-m petal edge in turn — for
/// delta <= 0 none of them is ever blocked, since the nearest shorter
/// boundary tips (the a_i) sit at distance m+1 > (1+delta)m — and each
/// petal costs 2m + 2, for 2m^2 + 4m total.
///
/// Predictions: `opt` = 6m (walk the backbone out and back plus each petal
/// in and out through its a-side), `blocking_cost_lb` = 2m^2,
/// `ratio_lb` = m/3, `n` = 3m + 1.
pub fn fan(m: u32) -> Result<InstanceDescriptor, FamilyError> {
    if m < 1 {
        return Err(FamilyError::TooSmall {
            family: "fan",
            param: "m",
            min: 1,
            got: m as u64,
        });
    }
    let p = m;
    let mut edges: Vec<(VertexId, VertexId, Weight)> = Vec::new();
    for i in 0..m {
        edges.push((i, i + 1, int(1)));
    }
    for i in 1..=m {
        let b = m + 2 * i - 1;
        let a = m + 2 * i;
        edges.push((0, a, int(1)));
        edges.push((a, b, int(1)));
        edges.push((b, p, int(m as i64)));
    }
    let graph = Graph::new(0, edges).expect("construction is valid");
    debug_assert_eq!(
        graph.classify(),
        if m == 1 {
            GraphClass::Unicyclic
        } else {
            GraphClass::General
        }
    );
    let meta = InstanceMeta {
        family: "fan".into(),
        params: params(&[("m", m.to_string())]),
        named: named(&[("s", 0), ("p", p)]),
        predictions: pred(&[
            ("opt", int(6 * m as i64)),
            ("blocking_cost_lb", int(2 * (m as i64) * (m as i64))),
            ("ratio_lb", ratio(m as i64, 3)),
            ("n", int((3 * m + 1) as i64)),
        ]),
    };
    Ok(InstanceDescriptor { graph, meta })
}

/// Which random family to generate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RandomFamily {
    Tree,
    Unicyclic,
    Cactus,
}

impl RandomFamily {
    fn name(self) -> &'static str {
        match self {
            RandomFamily::Tree => "random_tree",
            RandomFamily::Unicyclic => "random_unicyclic",
            RandomFamily::Cactus => "random_cactus",
        }
    }

    fn class(self) -> GraphClass {
        match self {
            RandomFamily::Tree => GraphClass::Tree,
            RandomFamily::Unicyclic => GraphClass::Unicyclic,
            RandomFamily::Cactus => GraphClass::Cactus,
        }
    }

    /// Smallest vertex count on which the class is attainable: a unicyclic
    /// graph needs a 3-cycle; a cactus (beyond unicyclic) needs two
    /// edge-disjoint cycles, which first fit at five vertices.
    pub fn min_vertices(self) -> u32 {
        match self {
            RandomFamily::Tree => 1,
            RandomFamily::Unicyclic => 3,
            RandomFamily::Cactus => 5,
        }
    }
}

impl fmt::Display for RandomFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RandomFamily::Tree => "tree",
            RandomFamily::Unicyclic => "unicyclic",
            RandomFamily::Cactus => "cactus",
        })
    }
}

impl FromStr for RandomFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "tree" => Ok(RandomFamily::Tree),
            "unicyclic" => Ok(RandomFamily::Unicyclic),
            "cactus" => Ok(RandomFamily::Cactus),
            other => Err(format!(
                "unknown family {other:?} (tree, unicyclic, cactus)"
            )),
        }
    }
}

/// Bounds for random edge weights: numerators 1..=max_numerator over
/// denominators 1..=max_denominator.
#[derive(Clone, Copy, Debug)]
pub struct WeightRange {
    pub max_numerator: i64,
    pub max_denominator: i64,
}

impl Default for WeightRange {
    fn default() -> Self {
        WeightRange {
            max_numerator: 9,
            max_denominator: 3,
        }
    }
}

impl WeightRange {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Weight {
        ratio(
            rng.gen_range(1..=self.max_numerator),
            rng.gen_range(1..=self.max_denominator),
        )
    }
}

/// Seeded random instance of the requested family. Reproducible bit-exactly
/// for a fixed (family, n, range, seed).
///
/// Trees attach each new vertex to a uniformly random earlier one.
/// Unicyclic graphs add one chord between a random non-adjacent tree pair.
/// Cacti first close two short edge-disjoint cycles (guaranteed to exist
/// for n >= 5), then add further chords over edge-disjoint tree paths.
pub fn random_instance(
    family: RandomFamily,
    n: u32,
    range: &WeightRange,
    seed: u64,
) -> Result<InstanceDescriptor, FamilyError> {
    let min = family.min_vertices();
    if n < min {
        return Err(FamilyError::TooSmall {
            family: family.name(),
            param: "n",
            min: min as u64,
            got: n as u64,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parent: Vec<VertexId> = vec![0; n as usize];
    let mut edges: Vec<(VertexId, VertexId, Weight)> = Vec::new();
    for v in 1..n {
        let p = rng.gen_range(0..v);
        parent[v as usize] = p;
        edges.push((p, v, range.sample(&mut rng)));
    }

    let tree_adj: BTreeMap<VertexId, Vec<VertexId>> = {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        adj.insert(0, Vec::new());
        for v in 1..n {
            adj.entry(parent[v as usize]).or_default().push(v);
            adj.entry(v).or_default().push(parent[v as usize]);
        }
        adj
    };
    let adjacent = |u: VertexId, v: VertexId| {
        parent[u as usize] == v && u != 0 || parent[v as usize] == u && v != 0
    };
    // Edges of the unique tree path between two vertices.
    let tree_path = |u: VertexId, v: VertexId| -> Vec<EdgeKey> {
        let mut prev: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut queue = std::collections::VecDeque::from([u]);
        prev.insert(u, u);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &y in &tree_adj[&x] {
                prev.entry(y).or_insert_with(|| {
                    queue.push_back(y);
                    x
                });
            }
        }
        let mut path = Vec::new();
        let mut cur = v;
        while prev[&cur] != cur {
            path.push(EdgeKey::new(cur, prev[&cur]));
            cur = prev[&cur];
        }
        path
    };

    match family {
        RandomFamily::Tree => {}
        RandomFamily::Unicyclic => {
            let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if !adjacent(u, v) {
                        pairs.push((u, v));
                    }
                }
            }
            let (u, v) = pairs[rng.gen_range(0..pairs.len())];
            edges.push((u, v, range.sample(&mut rng)));
        }
        RandomFamily::Cactus => {
            // Length-2 chord candidates: two non-adjacent neighbors of a
            // shared center. Any tree on >= 5 vertices contains two
            // edge-disjoint such paths; search candidate pairs for one.
            let mut short: Vec<((VertexId, VertexId), [EdgeKey; 2])> = Vec::new();
            for (&c, nbrs) in &tree_adj {
                for (i, &a) in nbrs.iter().enumerate() {
                    for &b in &nbrs[i + 1..] {
                        let (a, b) = (a.min(b), a.max(b));
                        short.push(((a, b), [EdgeKey::new(a, c), EdgeKey::new(c, b)]));
                    }
                }
            }
            short.shuffle(&mut rng);
            let mut first_two: Option<(usize, usize)> = None;
            'search: for i in 0..short.len() {
                for j in (i + 1)..short.len() {
                    let disjoint = short[i].1.iter().all(|e| !short[j].1.contains(e));
                    if disjoint && short[i].0 != short[j].0 {
                        first_two = Some((i, j));
                        break 'search;
                    }
                }
            }
            let (i, j) = first_two.expect("trees on >= 5 vertices admit two disjoint 2-paths");
            let mut used: Vec<EdgeKey> = Vec::new();
            let mut chords: Vec<(VertexId, VertexId)> = Vec::new();
            for idx in [i, j] {
                let ((u, v), path) = &short[idx];
                used.extend(path.iter().copied());
                chords.push((*u, *v));
            }
            // Optional further cycles over edge-disjoint tree paths.
            for _ in 0..n {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                if u == v || adjacent(u, v) {
                    continue;
                }
                let (u, v) = (u.min(v), u.max(v));
                if chords.contains(&(u, v)) {
                    continue;
                }
                let path = tree_path(u, v);
                if path.iter().any(|e| used.contains(e)) {
                    continue;
                }
                used.extend(path);
                chords.push((u, v));
            }
            for (u, v) in chords {
                edges.push((u, v, range.sample(&mut rng)));
            }
        }
    }

    let graph = Graph::new(0, edges).expect("construction is valid");
    debug_assert_eq!(graph.classify(), family.class());
    let meta = InstanceMeta {
        family: family.name().into(),
        params: params(&[("n", n.to_string()), ("seed", seed.to_string())]),
        named: BTreeMap::new(),
        predictions: BTreeMap::new(),
    };
    Ok(InstanceDescriptor { graph, meta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opt::{opt_exact, DEFAULT_EXACT_LIMIT};
    use crate::strategies::{run_blocking, run_dfs, run_nn, Delta};

    #[test]
    fn doubling_tree_base_and_structure() {
        let inst = doubling_tree(1).unwrap();
        assert_eq!(inst.graph.vertex_count(), 3);
        let ws: Vec<Weight> = inst
            .graph
            .edges()
            .iter()
            .map(|e| e.weight.clone())
            .collect();
        assert_eq!(ws, vec![int(1), int(1)]);
        assert_eq!(inst.meta.named["left"], 0);
        assert_eq!(inst.meta.named["right"], 1);
        assert_eq!(inst.meta.named["mid"], 2);
        assert_eq!(inst.id(), "doubling_tree[k=1]");
        assert_eq!(
            doubling_tree(0).unwrap_err().to_string(),
            "doubling_tree requires k >= 1, got 0"
        );

        // Level 3: 15 vertices, 14 edges; weight multiset 11 x 1, 2 x 2, 1 x 3.
        let inst = doubling_tree(3).unwrap();
        assert_eq!(inst.graph.vertex_count(), 15);
        let mut counts: BTreeMap<String, u32> = BTreeMap::new();
        for e in inst.graph.edges() {
            *counts.entry(format_weight(&e.weight)).or_default() += 1;
        }
        assert_eq!(
            counts,
            BTreeMap::from([
                ("1/1".to_string(), 11),
                ("2/1".to_string(), 2),
                ("3/1".to_string(), 1)
            ])
        );
    }

    #[test]
    fn doubling_tree_predictions_hold() {
        let mut prev_weight = None;
        for k in 1..=6u32 {
            let inst = doubling_tree(k).unwrap();
            let g = &inst.graph;
            let p = &inst.meta.predictions;
            assert_eq!(g.classify(), GraphClass::Tree);
            assert_eq!(int(g.vertex_count() as i64), p["n"], "n at k={k}");
            assert_eq!(g.total_weight(), p["total_weight"], "weight at k={k}");
            // Doubling recurrence on the total weight.
            if let Some(prev) = prev_weight.take() {
                assert_eq!(p["total_weight"], int(2) * prev + int(k as i64) + int(1));
            }
            prev_weight = Some(p["total_weight"].clone());
            let (_, d) = g
                .shortest_path(inst.meta.named["left"], inst.meta.named["right"])
                .unwrap();
            assert_eq!(d, p["shortest_lr"], "left-right distance at k={k}");
            assert_eq!(
                crate::opt::opt_cactus(g).unwrap().length,
                p["opt"],
                "opt at k={k}"
            );
            let nn = run_nn(g).unwrap();
            assert_eq!(
                nn.tour.total, p["nn_cost"],
                "nearest-neighbor cost at k={k}"
            );
            // The runs double as a DFS sanity check: a tree costs twice its
            // weight.
            assert_eq!(run_dfs(g).unwrap().tour.total, int(2) * g.total_weight());
        }
        // Frozen values at k = 5.
        let p = doubling_tree(5).unwrap().meta.predictions;
        assert_eq!(p["nn_cost"], int(222));
        assert_eq!(p["opt"], int(176));
        assert_eq!(p["n"], int(63));
    }

    #[test]
    fn spiked_path_geometry() {
        let d = ratio(-1, 2);
        let inst = spiked_path(3, &d).unwrap();
        let p = &inst.meta.predictions;
        // k = ceil(1/2) + 1 = 2; l = 2, 8, 26.
        assert_eq!(p["l_total"], int(36));
        assert_eq!(p["support_weight"], ratio(11, 2)); // 1 + 3 + 3/2
        assert_eq!(p["total_weight"], ratio(83, 2));
        assert_eq!(inst.graph.total_weight(), ratio(83, 2));
        assert_eq!(p["n"], int(14)); // 3*2 + 6 + 2
        assert_eq!(inst.graph.vertex_count(), 14);
        assert_eq!(inst.graph.classify(), GraphClass::Tree);
        // Spike tips sit at distance exactly (1 + delta) * |l_i| from the
        // near endpoint of l_i, measured inside the path.
        let g = &inst.graph;
        let path_last = 7; // entry + 6 path edges
        let (_, d1) = g.shortest_path(path_last, 8).unwrap(); // spike 1 tip
        assert_eq!(d1, int(1)); // (1 - 1/2) * 2
        let (_, d2) = g.shortest_path(9, 10).unwrap(); // far(1) to spike 2 tip
        assert_eq!(d2, int(4)); // (1 + delta) * 8
        let (_, d3) = g.shortest_path(11, 12).unwrap(); // far(2) to spike 3 tip
        assert_eq!(d3, int(13)); // (1 + delta) * 26

        // Growth bound |l_i| >= i / (1 + delta) across deltas, reading the
        // l edges back off their known IDs.
        for (delta, k) in [
            (ratio(-1, 2), 2u32),
            (int(0), 2),
            (int(1), 3),
            (ratio(3, 2), 4),
        ] {
            let m = 4u32;
            let inst = spiked_path(m, &delta).unwrap();
            let one_plus = int(1) + &delta;
            let path_last = 1 + m * k;
            let mut sum = int(0);
            for i in 1..=m {
                let u = if i == 1 {
                    path_last
                } else {
                    path_last + 2 * (i - 1)
                };
                let expect = (int(i as i64) + &sum) / &one_plus;
                let w = inst.graph.edge_weight(u, path_last + 2 * i).unwrap();
                assert_eq!(*w, expect, "l_{i} at delta={delta}");
                assert!(*w >= int(i as i64) / &one_plus);
                sum += w;
            }
        }
        assert!(matches!(
            spiked_path(2, &int(-1)),
            Err(FamilyError::DeltaTooSmall { .. })
        ));
        assert!(matches!(
            spiked_path(2, &ratio(-3, 2)),
            Err(FamilyError::DeltaTooSmall { .. })
        ));
    }

    #[test]
    fn spiked_path_blocking_run_matches_prediction() {
        for (m, delta) in [
            (1, ratio(-1, 2)),
            (3, ratio(-1, 2)),
            (2, int(0)),
            (2, int(1)),
        ] {
            let inst = spiked_path(m, &delta).unwrap();
            let out = run_blocking(&inst.graph, &Delta::Rational(delta.clone())).unwrap();
            assert_eq!(
                out.tour.total,
                inst.meta.predictions["blocking_cost"],
                "blocking cost on {} at delta={delta}",
                inst.id()
            );
            // Every deferred edge is one of the l edges, recorded with its
            // matching spike tip — the deferral dance in full.
            assert_eq!(out.records.len(), m as usize);
            for (key, tips) in &out.records {
                assert_eq!(tips.len(), 1, "{key} should have one blocker tip");
            }
        }
    }

    #[test]
    fn double_spiked_path_runs_both_halves() {
        for (m, delta) in [(1, ratio(-1, 2)), (2, ratio(-1, 2)), (2, int(1))] {
            let inst = double_spiked_path(m, &delta).unwrap();
            assert_eq!(inst.graph.classify(), GraphClass::Unicyclic);
            assert_eq!(
                int(inst.graph.vertex_count() as i64),
                inst.meta.predictions["n"]
            );
            let out = run_blocking(&inst.graph, &Delta::Rational(delta.clone())).unwrap();
            assert_eq!(
                out.tour.total,
                inst.meta.predictions["blocking_cost"],
                "blocking cost on {}",
                inst.id()
            );
            assert!(out.tour.total >= inst.meta.predictions["blocking_cost_lb"]);
        }
        // Small enough for the exact oracle: the closed-form opt agrees.
        let inst = double_spiked_path(1, &ratio(-1, 2)).unwrap();
        assert_eq!(
            opt_exact(&inst.graph, DEFAULT_EXACT_LIMIT).unwrap().length,
            inst.meta.predictions["opt"]
        );
    }

    #[test]
    fn spiked_cycle_shortcuts_the_last_edge() {
        for (m, delta) in [(1, ratio(-1, 2)), (3, ratio(-1, 2)), (2, int(1))] {
            let inst = spiked_cycle(m, &delta).unwrap();
            assert_eq!(inst.graph.classify(), GraphClass::Unicyclic);
            let out = run_blocking(&inst.graph, &Delta::Rational(delta.clone())).unwrap();
            assert_eq!(
                out.tour.total,
                inst.meta.predictions["blocking_cost"],
                "blocking cost on {}",
                inst.id()
            );
        }
        let inst = spiked_cycle(1, &ratio(-1, 2)).unwrap();
        assert_eq!(
            opt_exact(&inst.graph, DEFAULT_EXACT_LIMIT).unwrap().length,
            inst.meta.predictions["opt"]
        );
        // For m >= 2 at delta = -1/2 the cycle run is strictly cheaper than
        // the tree run plus hub edges: the shortcut actually engages.
        let tree = spiked_path(3, &ratio(-1, 2)).unwrap();
        let cycle = spiked_cycle(3, &ratio(-1, 2)).unwrap();
        assert!(
            cycle.meta.predictions["blocking_cost"]
                < tree.meta.predictions["blocking_cost"].clone() + int(4)
        );
    }

    #[test]
    fn fan_costs_grow_quadratically() {
        for m in [1u32, 2, 3, 4, 6] {
            let inst = fan(m).unwrap();
            let g = &inst.graph;
            assert_eq!(g.vertex_count() as i64, (3 * m + 1) as i64);
            assert_eq!(
                g.classify(),
                if m == 1 {
                    GraphClass::Unicyclic
                } else {
                    GraphClass::General
                }
            );
            for delta in [int(0), ratio(-1, 2)] {
                let out = run_blocking(g, &Delta::Rational(delta)).unwrap();
                // Exactly 2m petals' worth plus the doubled backbone.
                assert_eq!(out.tour.total, int((2 * m * m + 4 * m) as i64));
                assert!(out.tour.total >= inst.meta.predictions["blocking_cost_lb"]);
            }
        }
        let inst = fan(2).unwrap();
        assert_eq!(inst.meta.predictions["opt"], int(12));
        assert_eq!(inst.meta.named["s"], 0);
        assert_eq!(inst.meta.named["p"], 2);
    }

    #[test]
    fn random_instances_are_reproducible_and_classified() {
        for seed in 0..40u64 {
            let n_tree = 1 + (seed as u32 % 30);
            let t =
                random_instance(RandomFamily::Tree, n_tree, &WeightRange::default(), seed).unwrap();
            assert_eq!(t.graph.classify(), GraphClass::Tree);
            let n_uni = 3 + (seed as u32 % 28);
            let u = random_instance(
                RandomFamily::Unicyclic,
                n_uni,
                &WeightRange::default(),
                seed,
            )
            .unwrap();
            assert_eq!(u.graph.classify(), GraphClass::Unicyclic);
            let n_cac = 5 + (seed as u32 % 26);
            let c = random_instance(RandomFamily::Cactus, n_cac, &WeightRange::default(), seed)
                .unwrap();
            assert_eq!(c.graph.classify(), GraphClass::Cactus);
            for inst in [&t, &u, &c] {
                for e in inst.graph.edges() {
                    assert!(e.weight <= int(9) && e.weight >= ratio(1, 3));
                }
            }
            // Bit-exact reproducibility.
            let c2 = random_instance(RandomFamily::Cactus, n_cac, &WeightRange::default(), seed)
                .unwrap();
            assert_eq!(c.graph.to_text(), c2.graph.to_text());
        }
        let lone = random_instance(RandomFamily::Tree, 1, &WeightRange::default(), 7).unwrap();
        assert_eq!(lone.graph.vertex_count(), 1);
        assert!(matches!(
            random_instance(RandomFamily::Unicyclic, 2, &WeightRange::default(), 7),
            Err(FamilyError::TooSmall { min: 3, .. })
        ));
        assert!(matches!(
            random_instance(RandomFamily::Cactus, 4, &WeightRange::default(), 7),
            Err(FamilyError::TooSmall { min: 5, .. })
        ));
    }

    #[test]
    fn meta_text_round_trips() {
        let inst = doubling_tree(3).unwrap();
        let text = inst.meta.to_text();
        assert!(text.starts_with("meta family doubling_tree\nmeta param.k 3\n"));
        assert_eq!(InstanceMeta::parse(&text).unwrap(), inst.meta);

        let inst = spiked_cycle(2, &ratio(-1, 2)).unwrap();
        assert_eq!(
            InstanceMeta::parse(&inst.meta.to_text()).unwrap(),
            inst.meta
        );
        assert_eq!(inst.id(), "spiked_cycle[delta=-1/2,m=2]");

        assert!(InstanceMeta::parse("meta family x\nmeta named.a b\n").is_err());
        assert!(InstanceMeta::parse("banana\n").is_err());
        assert!(InstanceMeta::parse("# only comments\n").is_err());
        assert!(InstanceMeta::parse("meta pred.opt 1/0\n").is_err());
    }
}
