//! Built-in reproduction suite: twelve standing claims about the
//! strategies' behavior, each checked end to end on a fixed corpus of
//! generated instances. Every check is exact (rational or squared-radical
//! arithmetic); the only tolerances are explicit wall-clock budgets.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::families::{
    double_spiked_path, doubling_tree, fan, random_instance, spiked_cycle, InstanceDescriptor,
    RandomFamily, WeightRange,
};
use crate::graph::VertexId;
use crate::harness::{resolve_opt, OptSource, StrategySpec};
use crate::instrument::{audit_blocking, audit_run, AuditReport, CycleCatalog, ViolationKind};
use crate::opt::{opt_cactus, opt_exact, DEFAULT_EXACT_LIMIT};
use crate::strategies::{run_blocking, run_dfs, run_nn, Delta};
use crate::weight::{decimal, int, ratio, Weight};

/// Outcome of one claim check.
#[derive(Clone, Debug)]
pub struct ClaimResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn render_line(r: &ClaimResult) -> String {
    format!(
        "claim {:2}  {}  {} — {}",
        r.id,
        if r.passed { "pass" } else { "FAIL" },
        r.name,
        r.detail
    )
}

pub fn render_results(results: &[ClaimResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&render_line(r));
        out.push('\n');
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed == 0 {
        out.push_str(&format!("all {} claims reproduced\n", results.len()));
    } else {
        out.push_str(&format!("{} of {} claims failed\n", failed, results.len()));
    }
    out
}

/// Run the whole suite in order.
pub fn run_all() -> Vec<ClaimResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(),
        criterion_12(),
    ]
}

// ---------------------------------------------------------------------------
// Shared corpus and cached runs.

struct Corpus {
    /// Doubling trees, levels 1..=8.
    gk: Vec<InstanceDescriptor>,
    /// 200 random unicyclic graphs, 5 <= n <= 60.
    uni_half: Vec<InstanceDescriptor>,
    /// Both closed spiked gadgets at delta = -1/2, m = 1..=20.
    gadgets_half: Vec<InstanceDescriptor>,
    /// 200 random cacti, 6 <= n <= 60.
    cacti_sqrt: Vec<InstanceDescriptor>,
    /// The two large double gadgets with their matched deltas.
    doubles: Vec<(InstanceDescriptor, Weight)>,
    /// Fans m = 2, 6, 9, 12.
    fans: Vec<InstanceDescriptor>,
    /// 100 instances per family for the degeneration check.
    dfs_equiv: Vec<InstanceDescriptor>,
    /// 200 random cacti small enough for the exhaustive optimum.
    small_cacti: Vec<InstanceDescriptor>,
    /// Positive-delta batteries: unicyclic at delta = 1, cacti at delta = 2,
    /// gadget pairs at delta = 1.
    pos_uni: Vec<InstanceDescriptor>,
    pos_cacti: Vec<InstanceDescriptor>,
    pos_gadgets: Vec<InstanceDescriptor>,
}

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let range = WeightRange::default();
        let half = ratio(-1, 2);
        let one = int(1);
        Corpus {
            gk: (1..=8).map(|k| doubling_tree(k).unwrap()).collect(),
            uni_half: (1..=200u64)
                .map(|i| {
                    let n = 5 + ((i as u32 * 13) % 56);
                    random_instance(RandomFamily::Unicyclic, n, &range, i).unwrap()
                })
                .collect(),
            gadgets_half: (1..=20)
                .flat_map(|m| {
                    [
                        double_spiked_path(m, &half).unwrap(),
                        spiked_cycle(m, &half).unwrap(),
                    ]
                })
                .collect(),
            cacti_sqrt: (1..=200u64)
                .map(|i| {
                    let n = 6 + ((i as u32 * 11) % 55);
                    random_instance(RandomFamily::Cactus, n, &range, 2000 + i).unwrap()
                })
                .collect(),
            doubles: vec![
                (double_spiked_path(40, &half).unwrap(), half.clone()),
                (double_spiked_path(40, &one).unwrap(), one.clone()),
            ],
            fans: [2, 6, 9, 12].map(|m| fan(m).unwrap()).to_vec(),
            dfs_equiv: (0..100u64)
                .flat_map(|i| {
                    [
                        random_instance(RandomFamily::Tree, 1 + (i as u32 % 30), &range, 1000 + i)
                            .unwrap(),
                        random_instance(
                            RandomFamily::Unicyclic,
                            3 + (i as u32 % 28),
                            &range,
                            1100 + i,
                        )
                        .unwrap(),
                        random_instance(
                            RandomFamily::Cactus,
                            5 + (i as u32 % 26),
                            &range,
                            1200 + i,
                        )
                        .unwrap(),
                    ]
                })
                .collect(),
            small_cacti: (0..200u64)
                .map(|i| {
                    let n = 5 + (i as u32 % 8);
                    random_instance(RandomFamily::Cactus, n, &range, 3000 + i).unwrap()
                })
                .collect(),
            pos_uni: (0..100u64)
                .map(|i| {
                    let n = 3 + ((i as u32 * 7) % 48);
                    random_instance(RandomFamily::Unicyclic, n, &range, 5000 + i).unwrap()
                })
                .collect(),
            pos_cacti: (0..100u64)
                .map(|i| {
                    let n = 5 + ((i as u32 * 7) % 48);
                    random_instance(RandomFamily::Cactus, n, &range, 6000 + i).unwrap()
                })
                .collect(),
            pos_gadgets: (1..=6)
                .flat_map(|m| {
                    [
                        double_spiked_path(m, &one).unwrap(),
                        spiked_cycle(m, &one).unwrap(),
                    ]
                })
                .collect(),
        }
    })
}

/// One cached strategy run with its audit and resolved optimum.
pub struct RunRecord {
    pub battery: &'static str,
    pub instance: String,
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub strategy: StrategySpec,
    pub cost: Weight,
    pub opt: Option<(Weight, OptSource)>,
    pub predictions: BTreeMap<String, Weight>,
    pub audit: AuditReport,
    pub steps: Vec<(VertexId, VertexId)>,
}

fn execute(battery: &'static str, inst: &InstanceDescriptor, strategy: StrategySpec) -> RunRecord {
    let (cost, audit, steps) = match &strategy {
        StrategySpec::Nn => {
            let out = run_nn(&inst.graph).expect("corpus runs succeed");
            let audit = audit_run(&inst.graph, &out.tour, &out.ledger);
            let steps = out.tour.steps.iter().map(|s| (s.from, s.to)).collect();
            (out.tour.total, audit, steps)
        }
        StrategySpec::Dfs => {
            let out = run_dfs(&inst.graph).expect("corpus runs succeed");
            let audit = audit_run(&inst.graph, &out.tour, &out.ledger);
            let steps = out.tour.steps.iter().map(|s| (s.from, s.to)).collect();
            (out.tour.total, audit, steps)
        }
        StrategySpec::Blocking(d) => {
            let out = run_blocking(&inst.graph, d).expect("corpus runs succeed");
            let catalog = CycleCatalog::build(&inst.graph).expect("corpus cycles enumerate");
            let audit = audit_blocking(&inst.graph, d, &out, &catalog);
            let steps = out.tour.steps.iter().map(|s| (s.from, s.to)).collect();
            (out.tour.total, audit, steps)
        }
    };
    RunRecord {
        battery,
        instance: inst.id(),
        family: inst.meta.family.clone(),
        params: inst.meta.params.clone(),
        strategy,
        cost,
        opt: resolve_opt(inst, DEFAULT_EXACT_LIMIT),
        predictions: inst.meta.predictions.clone(),
        audit,
        steps,
    }
}

/// Every strategy run the suite performs, cached after the first request.
pub fn runs() -> &'static [RunRecord] {
    static RUNS: OnceLock<Vec<RunRecord>> = OnceLock::new();
    RUNS.get_or_init(|| {
        let c = corpus();
        let half = Delta::Rational(ratio(-1, 2));
        let mut jobs: Vec<(&'static str, &InstanceDescriptor, StrategySpec)> = Vec::new();
        for inst in &c.gk {
            jobs.push(("gk", inst, StrategySpec::Nn));
        }
        for inst in &c.uni_half {
            jobs.push(("uni_half", inst, StrategySpec::Blocking(half.clone())));
        }
        for inst in &c.gadgets_half {
            jobs.push(("gadgets_half", inst, StrategySpec::Blocking(half.clone())));
        }
        for inst in &c.cacti_sqrt {
            jobs.push((
                "cacti_sqrt",
                inst,
                StrategySpec::Blocking(Delta::InvSqrt2MinusOne),
            ));
        }
        for (inst, d) in &c.doubles {
            jobs.push((
                "double40",
                inst,
                StrategySpec::Blocking(Delta::Rational(d.clone())),
            ));
        }
        for inst in &c.fans {
            for d in [int(0), ratio(-1, 2)] {
                jobs.push(("fans", inst, StrategySpec::Blocking(Delta::Rational(d))));
            }
        }
        for inst in &c.dfs_equiv {
            jobs.push((
                "dfs_equiv",
                inst,
                StrategySpec::Blocking(Delta::Rational(int(-1))),
            ));
            jobs.push(("dfs_equiv", inst, StrategySpec::Dfs));
        }
        for inst in &c.pos_uni {
            jobs.push(("pos", inst, StrategySpec::Blocking(Delta::Rational(int(1)))));
        }
        for inst in &c.pos_cacti {
            jobs.push(("pos", inst, StrategySpec::Blocking(Delta::Rational(int(2)))));
        }
        for inst in &c.pos_gadgets {
            jobs.push(("pos", inst, StrategySpec::Blocking(Delta::Rational(int(1)))));
        }
        jobs.into_par_iter()
            .map(|(battery, inst, strategy)| execute(battery, inst, strategy))
            .collect()
    })
}

/// Serializes the wall-clock-budgeted claims so their timings don't fight
/// each other when the suite runs on parallel test threads.
fn timing_lock() -> std::sync::MutexGuard<'static, ()> {
    static LOCK: Mutex<()> = Mutex::new(());
    LOCK.lock().unwrap_or_else(|p| p.into_inner())
}

fn fmt_elapsed(e: Duration) -> String {
    format!("{:.2}s", e.as_secs_f64())
}

// ---------------------------------------------------------------------------
// The twelve claims.

/// Nearest-neighbor cost and offline optimum on the doubling trees match
/// their closed forms `(k+2)*2^k - 2` and `6*2^k - 2k - 6` for k = 1..=8,
/// within a one-second budget.
pub fn criterion_1() -> ClaimResult {
    let budget = Duration::from_secs(1);
    let _ = runs(); // warm the shared cache so the timer sees only this work
    let _guard = timing_lock();
    let start = Instant::now();
    let mut bad = Vec::new();
    for k in 1..=8u32 {
        let inst = doubling_tree(k).unwrap();
        let nn = run_nn(&inst.graph).unwrap().tour.total;
        let opt = opt_cactus(&inst.graph).unwrap().length;
        let p2k = 1i64 << k;
        if nn != int((k as i64 + 2) * p2k - 2) {
            bad.push(format!("k={k}: tour cost {}", decimal(&nn)));
        }
        if opt != int(6 * p2k - 2 * k as i64 - 6) {
            bad.push(format!("k={k}: optimum {}", decimal(&opt)));
        }
    }
    let elapsed = start.elapsed();
    let on_time = elapsed < budget;
    ClaimResult {
        id: 1,
        name: "doubling-tree cost and optimum closed forms",
        passed: bad.is_empty() && on_time,
        detail: if bad.is_empty() {
            format!(
                "8 levels (largest n=511) verified in {}",
                fmt_elapsed(elapsed)
            )
        } else {
            format!("mismatches: {}", bad.join("; "))
        },
    }
}

/// The measured nearest-neighbor ratio on the level-k doubling tree is at
/// least `(log2(n+1) + 1) / 6 = (k+2)/6`, compared exactly.
pub fn criterion_2() -> ClaimResult {
    let mut worst = None::<Weight>;
    let mut bad = Vec::new();
    for k in 1..=8u32 {
        let id = format!("doubling_tree[k={k}]");
        let row = runs()
            .iter()
            .find(|r| r.battery == "gk" && r.instance == id)
            .expect("doubling tree rows exist");
        let (opt, _) = row.opt.as_ref().expect("trees have a closed-form optimum");
        // cost/opt >= (k+2)/6  <=>  6*cost >= (k+2)*opt, all integers here.
        if int(6) * &row.cost < int(k as i64 + 2) * opt {
            bad.push(format!("k={k}"));
        }
        let ratio = &row.cost / opt;
        if worst.as_ref().map_or(true, |w| ratio > *w) {
            worst = Some(ratio);
        }
    }
    ClaimResult {
        id: 2,
        name: "nearest-neighbor logarithmic lower bound",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!(
                "ratio reaches {} at k=8 (bound {})",
                decimal(&worst.unwrap()),
                decimal(&ratio(10, 6))
            )
        } else {
            format!("bound violated at {}", bad.join(", "))
        },
    }
}

/// The end-to-end distance in the level-k doubling tree is exactly
/// `2^(k+1) - k - 2` for k = 1..=8.
pub fn criterion_3() -> ClaimResult {
    let mut bad = Vec::new();
    for k in 1..=8u32 {
        let inst = doubling_tree(k).unwrap();
        let (_, d) = inst
            .graph
            .shortest_path(inst.meta.named["left"], inst.meta.named["right"])
            .unwrap();
        if d != int(2 * (1i64 << k) - k as i64 - 2) {
            bad.push(format!("k={k}: {}", decimal(&d)));
        }
    }
    ClaimResult {
        id: 3,
        name: "doubling-tree end-to-end distances",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "8 levels verified".into()
        } else {
            format!("mismatches: {}", bad.join("; "))
        },
    }
}

/// At delta = -1/2 the blocking strategy stays within ratio 3 of the
/// optimum on 200 random unicyclic graphs (n up to 60) and on both closed
/// spiked gadgets for m = 1..=20, within a thirty-second budget.
pub fn criterion_4() -> ClaimResult {
    let budget = Duration::from_secs(30);
    let c = corpus();
    let _ = runs();
    let _guard = timing_lock();
    let start = Instant::now();
    let delta = Delta::Rational(ratio(-1, 2));
    let mut worst = int(0);
    let mut bad = Vec::new();
    let mut count = 0usize;
    for inst in c.uni_half.iter().chain(&c.gadgets_half) {
        let cost = run_blocking(&inst.graph, &delta).unwrap().tour.total;
        let opt = opt_cactus(&inst.graph).unwrap().length;
        if cost > int(3) * &opt {
            bad.push(inst.id());
        }
        let r = cost / opt;
        if r > worst {
            worst = r;
        }
        count += 1;
    }
    let elapsed = start.elapsed();
    let on_time = elapsed < budget;
    ClaimResult {
        id: 4,
        name: "ratio at most 3 at delta=-1/2 on unicyclic graphs and gadgets",
        passed: bad.is_empty() && on_time,
        detail: if bad.is_empty() {
            format!(
                "{count} instances, worst ratio {}, {}",
                decimal(&worst),
                fmt_elapsed(elapsed)
            )
        } else {
            format!("ratio above 3 on {}", bad.join(", "))
        },
    }
}

/// At delta = 1/sqrt(2) - 1 the blocking strategy stays within ratio
/// 5/2 + sqrt(2) of the optimum on 200 random cacti (n up to 60), decided
/// by exact squared comparisons, within a thirty-second budget.
pub fn criterion_5() -> ClaimResult {
    let budget = Duration::from_secs(30);
    let c = corpus();
    let _ = runs();
    let _guard = timing_lock();
    let start = Instant::now();
    let delta = Delta::InvSqrt2MinusOne;
    let mut worst = int(0);
    let mut bad = Vec::new();
    for inst in &c.cacti_sqrt {
        let cost = run_blocking(&inst.graph, &delta).unwrap().tour.total;
        let opt = opt_cactus(&inst.graph).unwrap().length;
        // cost <= (5/2 + sqrt(2)) * opt, exactly.
        if crate::weight::cmp_vs_quad(&cost, &ratio(5, 2), &int(1), &opt)
            == std::cmp::Ordering::Greater
        {
            bad.push(inst.id());
        }
        let r = cost / opt;
        if r > worst {
            worst = r;
        }
    }
    let elapsed = start.elapsed();
    let on_time = elapsed < budget;
    ClaimResult {
        id: 5,
        name: "ratio at most 5/2+sqrt(2) on cacti at the tuned delta",
        passed: bad.is_empty() && on_time,
        detail: if bad.is_empty() {
            format!(
                "200 cacti, worst ratio {} (bound 3.91421), {}",
                decimal(&worst),
                fmt_elapsed(elapsed)
            )
        } else {
            format!("bound exceeded on {}", bad.join(", "))
        },
    }
}

/// On the m = 40 double gadget the measured ratio lands inside
/// [(4 + 2*delta) - 1/5, 4 + 2*delta) for delta = -1/2 and delta = 1: the
/// upper guarantee is tight.
pub fn criterion_6() -> ClaimResult {
    let mut details = Vec::new();
    let mut ok = true;
    for row in runs().iter().filter(|r| r.battery == "double40") {
        let StrategySpec::Blocking(Delta::Rational(d)) = &row.strategy else {
            continue;
        };
        let (opt, _) = row
            .opt
            .as_ref()
            .expect("gadgets have a closed-form optimum");
        let guarantee = int(4) + int(2) * d;
        let lower = &guarantee - ratio(1, 5);
        let above = row.cost >= &lower * opt;
        let below = row.cost < &guarantee * opt;
        ok &= above && below;
        details.push(format!(
            "delta={d}: ratio {} in [{}, {}){}",
            decimal(&(&row.cost / opt)),
            decimal(&lower),
            decimal(&guarantee),
            if above && below { "" } else { " VIOLATED" }
        ));
    }
    ClaimResult {
        id: 6,
        name: "double-gadget ratios approach the 4+2*delta guarantee",
        passed: ok && !details.is_empty(),
        detail: details.join("; "),
    }
}

/// Fan instances: for m = 6, 9, 12 and delta in {0, -1/2} the blocking cost
/// is at least 2m^2 and the ratio against the attached 6m optimum is at
/// least m/3; and the exhaustive offline optimum of the two-petal fan is
/// exactly 12.
pub fn criterion_7() -> ClaimResult {
    let mut bad = Vec::new();
    let mut checked = 0;
    for row in runs().iter().filter(|r| r.battery == "fans") {
        let m: i64 = row.params["m"].parse().unwrap();
        if m < 6 {
            continue;
        }
        checked += 1;
        if row.cost < int(2 * m * m) {
            bad.push(format!("{}: cost {}", row.instance, decimal(&row.cost)));
        }
        let opt = &row.predictions["opt"];
        // cost/opt >= m/3  <=>  3*cost >= m*opt.
        if int(3) * &row.cost < int(m) * opt {
            bad.push(format!("{}: ratio below m/3", row.instance));
        }
    }
    let two_petal = fan(2).unwrap();
    let measured = opt_exact(&two_petal.graph, DEFAULT_EXACT_LIMIT)
        .unwrap()
        .length;
    let expected = int(12);
    if measured != expected {
        bad.push(format!(
            "fan[m=2]: exhaustive optimum is {}, claim requires {}",
            decimal(&measured),
            decimal(&expected)
        ));
    }
    ClaimResult {
        id: 7,
        name: "fan growth and the two-petal fan optimum",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{checked} fan runs at or above the quadratic bound; fan[m=2] optimum 12")
        } else {
            bad.join("; ")
        },
    }
}

/// At delta = -1 the blocking strategy's tour is step-for-step identical
/// to depth-first traversal on 100 random instances of each family.
pub fn criterion_8() -> ClaimResult {
    let mut by_instance: BTreeMap<&str, [Option<&RunRecord>; 2]> = BTreeMap::new();
    for row in runs().iter().filter(|r| r.battery == "dfs_equiv") {
        let slot = match row.strategy {
            StrategySpec::Blocking(_) => 0,
            StrategySpec::Dfs => 1,
            StrategySpec::Nn => continue,
        };
        by_instance.entry(&row.instance).or_default()[slot] = Some(row);
    }
    let mut compared = 0;
    let mut bad = Vec::new();
    for (inst, [blocking, dfs]) in &by_instance {
        let (b, d) = (
            blocking.expect("both runs exist"),
            dfs.expect("both runs exist"),
        );
        compared += 1;
        if b.steps != d.steps {
            bad.push((*inst).to_string());
        }
    }
    ClaimResult {
        id: 8,
        name: "blocking at delta=-1 degenerates to depth-first",
        passed: bad.is_empty() && compared == 300,
        detail: if bad.is_empty() {
            format!("{compared} instances, identical step sequences")
        } else {
            format!("tours diverge on {}", bad.join(", "))
        },
    }
}

/// The cactus closed form agrees with the exhaustive dynamic program on
/// 200 random cacti with at most 12 vertices, within a sixty-second budget.
pub fn criterion_9() -> ClaimResult {
    let budget = Duration::from_secs(60);
    let c = corpus();
    let _ = runs();
    let _guard = timing_lock();
    let start = Instant::now();
    let mut bad = Vec::new();
    for inst in &c.small_cacti {
        let closed = opt_cactus(&inst.graph).unwrap().length;
        let exact = opt_exact(&inst.graph, 12).unwrap().length;
        if closed != exact {
            bad.push(format!(
                "{}: closed form {}, exhaustive {}",
                inst.id(),
                decimal(&closed),
                decimal(&exact)
            ));
        }
    }
    let elapsed = start.elapsed();
    let on_time = elapsed < budget;
    ClaimResult {
        id: 9,
        name: "closed-form optimum matches the exhaustive optimum",
        passed: bad.is_empty() && on_time,
        detail: if bad.is_empty() {
            format!("200 cacti agree, {}", fmt_elapsed(elapsed))
        } else {
            bad.join("; ")
        },
    }
}

/// In every blocking run with delta > 0, each edge's ledger entry is at
/// most (4 + 2*delta) times its weight and was written in at most one
/// iteration.
pub fn criterion_10() -> ClaimResult {
    let mut runs_checked = 0;
    let mut charges = 0;
    let mut bad = Vec::new();
    for row in runs() {
        let StrategySpec::Blocking(d) = &row.strategy else {
            continue;
        };
        if !d.is_positive() {
            continue;
        }
        runs_checked += 1;
        charges += row.audit.charges_checked;
        let violations = row.audit.count_of(ViolationKind::ChargeBound)
            + row.audit.count_of(ViolationKind::WriteOnce);
        if violations > 0 {
            bad.push(format!("{} ({violations} violations)", row.instance));
        }
    }
    ClaimResult {
        id: 10,
        name: "per-edge charge bound and write-once accounting at delta>0",
        passed: bad.is_empty() && runs_checked > 0,
        detail: if bad.is_empty() {
            format!("{runs_checked} runs, {charges} ledger entries within bound")
        } else {
            bad.join("; ")
        },
    }
}

/// Overlong cycle edges are handled as guaranteed: with delta > 0 one is
/// never traversed while its cycle still has another boundary edge, and at
/// every delta an unblocked overlong edge satisfies
/// (1 + delta) * |e| < |C| - |e|.
pub fn criterion_11() -> ClaimResult {
    let mut evals = 0;
    let mut traversals = 0;
    let mut runs_checked = 0;
    let mut bad = Vec::new();
    for row in runs() {
        let StrategySpec::Blocking(_) = &row.strategy else {
            continue;
        };
        runs_checked += 1;
        evals += row.audit.evals_checked;
        traversals += row.audit.traversals_checked;
        let violations = row.audit.count_of(ViolationKind::UnblockedLongEdge)
            + row.audit.count_of(ViolationKind::LongEdgeTraversal);
        if violations > 0 {
            bad.push(format!("{} ({violations} violations)", row.instance));
        }
    }
    ClaimResult {
        id: 11,
        name: "overlong cycle edges are dodged",
        passed: bad.is_empty() && evals > 0 && traversals > 0,
        detail: if bad.is_empty() {
            format!(
                "{runs_checked} blocking runs: {traversals} traversals and {evals} \
                 overlong-edge evaluations clean"
            )
        } else {
            bad.join("; ")
        },
    }
}

/// Every strategy run in the corpus yields a complete closed tour whose
/// cost is at least the offline optimum wherever a true optimum is
/// computable (closed form on cactus classes, exhaustive elsewhere).
pub fn criterion_12() -> ClaimResult {
    let mut compared = 0;
    let mut completeness = 0;
    let mut bad = Vec::new();
    for row in runs() {
        completeness += 1;
        let structural = row.audit.count_of(ViolationKind::Tour)
            + row.audit.count_of(ViolationKind::Ledger)
            + row.audit.count_of(ViolationKind::Replay);
        if structural > 0 {
            bad.push(format!("{}: malformed tour or ledger", row.instance));
        }
        if let Some((opt, OptSource::ClosedForm | OptSource::Exact)) = &row.opt {
            compared += 1;
            if row.cost < *opt {
                bad.push(format!(
                    "{}: cost {} below optimum {}",
                    row.instance,
                    decimal(&row.cost),
                    decimal(opt)
                ));
            }
        }
    }
    ClaimResult {
        id: 12,
        name: "all tours are complete, closed, and at least the optimum",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!(
                "{completeness} runs complete and closed, {compared} compared to a true optimum"
            )
        } else {
            bad.join("; ")
        },
    }
}
