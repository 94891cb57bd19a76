//! Experiment harness: a line-oriented configuration format, a parallel
//! batch runner producing deterministic reports, and the built-in claim
//! reproduction suite (see [`reproduce`]).

pub mod reproduce;

use std::fmt;
use std::path::Path;

use rayon::prelude::*;

use crate::families::{
    self, FamilyError, InstanceDescriptor, InstanceMeta, RandomFamily, WeightRange,
};
use crate::graph::{GraphClass, GraphError};
use crate::instrument::{audit_blocking, audit_run, CatalogError, CycleCatalog};
use crate::opt::{opt_cactus, opt_exact, DEFAULT_EXACT_LIMIT};
use crate::strategies::{run_blocking, run_dfs, run_nn, Delta};
use crate::weight::{decimal, format_weight, Weight};

/// A strategy to run, as named in configuration files.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StrategySpec {
    Nn,
    Dfs,
    Blocking(Delta),
}

impl fmt::Display for StrategySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategySpec::Nn => f.write_str("nn"),
            StrategySpec::Dfs => f.write_str("dfs"),
            StrategySpec::Blocking(d) => write!(f, "blocking({d})"),
        }
    }
}

/// A parsed experiment: which instances to run under which strategies.
#[derive(Debug)]
pub struct ExperimentConfig {
    pub instances: Vec<InstanceDescriptor>,
    pub strategies: Vec<StrategySpec>,
    /// Run the invariant audits alongside each strategy (default: on).
    pub checks: bool,
    /// Largest vertex count handed to the exact dynamic program when the
    /// closed form does not apply.
    pub opt_limit: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            instances: Vec::new(),
            strategies: Vec::new(),
            checks: true,
            opt_limit: DEFAULT_EXACT_LIMIT,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Engine(#[from] crate::engine::EngineError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("reading {path}: {err}")]
    Io { path: String, err: std::io::Error },
}

fn kv_pairs(
    line: usize,
    parts: &[&str],
) -> Result<std::collections::BTreeMap<String, String>, HarnessError> {
    let mut map = std::collections::BTreeMap::new();
    for p in parts {
        let (k, v) = p.split_once('=').ok_or_else(|| HarnessError::Config {
            line,
            msg: format!("expected key=value, got {p:?}"),
        })?;
        map.insert(k.to_string(), v.to_string());
    }
    Ok(map)
}

fn take<'m, T: std::str::FromStr>(
    line: usize,
    map: &'m std::collections::BTreeMap<String, String>,
    key: &str,
) -> Result<T, HarnessError>
where
    T::Err: fmt::Display,
{
    let raw = map.get(key).ok_or_else(|| HarnessError::Config {
        line,
        msg: format!("missing required parameter {key}"),
    })?;
    raw.parse().map_err(|e| HarnessError::Config {
        line,
        msg: format!("parameter {key}={raw}: {e}"),
    })
}

fn take_delta(
    line: usize,
    map: &std::collections::BTreeMap<String, String>,
) -> Result<Weight, HarnessError> {
    let raw = map.get("delta").ok_or_else(|| HarnessError::Config {
        line,
        msg: "missing required parameter delta".to_string(),
    })?;
    crate::weight::parse_weight(raw).map_err(|e| HarnessError::Config {
        line,
        msg: format!("parameter delta={raw}: {e}"),
    })
}

fn instance_from_line(
    line: usize,
    family: &str,
    rest: &[&str],
) -> Result<InstanceDescriptor, HarnessError> {
    let map = kv_pairs(line, rest)?;
    let inst = match family {
        "doubling_tree" => families::doubling_tree(take(line, &map, "k")?)?,
        "spiked_path" => families::spiked_path(take(line, &map, "m")?, &take_delta(line, &map)?)?,
        "double_spiked_path" => {
            families::double_spiked_path(take(line, &map, "m")?, &take_delta(line, &map)?)?
        }
        "spiked_cycle" => families::spiked_cycle(take(line, &map, "m")?, &take_delta(line, &map)?)?,
        "fan" => families::fan(take(line, &map, "m")?)?,
        "random_tree" | "random_unicyclic" | "random_cactus" => {
            let fam: RandomFamily = family
                .trim_start_matches("random_")
                .parse()
                .map_err(|e: String| HarnessError::Config { line, msg: e })?;
            let mut range = WeightRange::default();
            if let Some(v) = map.get("max_numerator") {
                range.max_numerator = v.parse().map_err(|e| HarnessError::Config {
                    line,
                    msg: format!("max_numerator={v}: {e}"),
                })?;
            }
            if let Some(v) = map.get("max_denominator") {
                range.max_denominator = v.parse().map_err(|e| HarnessError::Config {
                    line,
                    msg: format!("max_denominator={v}: {e}"),
                })?;
            }
            families::random_instance(
                fam,
                take(line, &map, "n")?,
                &range,
                take(line, &map, "seed")?,
            )?
        }
        other => {
            return Err(HarnessError::Config {
                line,
                msg: format!("unknown instance family {other:?}"),
            })
        }
    };
    Ok(inst)
}

/// Parse an experiment configuration.
///
/// One directive per line; `#` starts a comment. Directives:
///
/// ```text
/// instance <family> key=value ...     # doubling_tree k=4 / spiked_path m=3 delta=-1/2 / ...
/// instance-file <path>                # graph text file, plus <path>.meta sidecar if present
/// strategy nn | dfs | blocking delta=<d>
/// checks on | off
/// opt-limit <n>
/// ```
///
/// Relative `instance-file` paths resolve against `base_dir`.
pub fn parse_config(text: &str, base_dir: &Path) -> Result<ExperimentConfig, HarnessError> {
    let mut cfg = ExperimentConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            continue;
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        match parts[0] {
            "instance" => {
                let [_, family, rest @ ..] = parts.as_slice() else {
                    return Err(HarnessError::Config {
                        line,
                        msg: "instance needs a family name".into(),
                    });
                };
                cfg.instances.push(instance_from_line(line, family, rest)?);
            }
            "instance-file" if parts.len() == 2 => {
                let path = base_dir.join(parts[1]);
                let read = |p: &Path| {
                    std::fs::read_to_string(p).map_err(|err| HarnessError::Io {
                        path: p.display().to_string(),
                        err,
                    })
                };
                let graph = crate::graph::Graph::from_text(&read(&path)?)?;
                let meta_path = path.with_extension(format!(
                    "{}meta",
                    path.extension()
                        .map(|e| format!("{}.", e.to_string_lossy()))
                        .unwrap_or_default()
                ));
                let meta = if meta_path.exists() {
                    InstanceMeta::parse(&read(&meta_path)?).map_err(|e| HarnessError::Config {
                        line,
                        msg: e.to_string(),
                    })?
                } else {
                    InstanceMeta {
                        family: "file".into(),
                        params: [(
                            "path".to_string(),
                            path.file_name()
                                .unwrap_or_default()
                                .to_string_lossy()
                                .into_owned(),
                        )]
                        .into(),
                        named: Default::default(),
                        predictions: Default::default(),
                    }
                };
                cfg.instances.push(InstanceDescriptor { graph, meta });
            }
            "strategy" => match parts.as_slice() {
                [_, "nn"] => cfg.strategies.push(StrategySpec::Nn),
                [_, "dfs"] => cfg.strategies.push(StrategySpec::Dfs),
                [_, "blocking", rest @ ..] => {
                    let map = kv_pairs(line, rest)?;
                    let raw = map.get("delta").ok_or_else(|| HarnessError::Config {
                        line,
                        msg: "blocking needs delta=<value>".into(),
                    })?;
                    let d = raw.parse::<Delta>().map_err(|e| HarnessError::Config {
                        line,
                        msg: format!("delta={raw}: {e}"),
                    })?;
                    cfg.strategies.push(StrategySpec::Blocking(d));
                }
                _ => {
                    return Err(HarnessError::Config {
                        line,
                        msg: format!("unknown strategy line {t:?}"),
                    })
                }
            },
            "checks" if parts.len() == 2 => match parts[1] {
                "on" => cfg.checks = true,
                "off" => cfg.checks = false,
                other => {
                    return Err(HarnessError::Config {
                        line,
                        msg: format!("checks must be on or off, got {other:?}"),
                    })
                }
            },
            "opt-limit" if parts.len() == 2 => {
                cfg.opt_limit = parts[1].parse().map_err(|e| HarnessError::Config {
                    line,
                    msg: format!("opt-limit {:?}: {e}", parts[1]),
                })?;
            }
            other => {
                return Err(HarnessError::Config {
                    line,
                    msg: format!("unknown directive {other:?}"),
                })
            }
        }
    }
    Ok(cfg)
}

/// Where a reported optimum came from. Only closed-form and exact values
/// are true optima; predicted values are the instance's attached formula.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OptSource {
    ClosedForm,
    Exact,
    Predicted,
}

/// One instance × strategy result.
#[derive(Clone, Debug)]
pub struct ReportRow {
    pub instance: String,
    pub family: String,
    pub params: String,
    pub strategy: String,
    pub delta: String,
    pub cost: Weight,
    pub opt: Option<(Weight, OptSource)>,
    pub ratio: Option<Weight>,
    /// `Some(true)` when all audits passed and the cost is at least the true
    /// optimum (where one is known); `None` when checks were off.
    pub bounds_ok: Option<bool>,
}

/// Resolve the best available offline optimum for an instance.
pub fn resolve_opt(inst: &InstanceDescriptor, opt_limit: usize) -> Option<(Weight, OptSource)> {
    if inst.graph.classify() != GraphClass::General {
        let r = opt_cactus(&inst.graph).expect("cactus classes have a closed form");
        return Some((r.length, OptSource::ClosedForm));
    }
    if let Ok(r) = opt_exact(&inst.graph, opt_limit) {
        return Some((r.length, OptSource::Exact));
    }
    inst.meta
        .predictions
        .get("opt")
        .map(|w| (w.clone(), OptSource::Predicted))
}

fn run_one(
    inst: &InstanceDescriptor,
    strat: &StrategySpec,
    cfg: &ExperimentConfig,
) -> Result<ReportRow, HarnessError> {
    let (cost, audit_clean) = match strat {
        StrategySpec::Nn => {
            let out = run_nn(&inst.graph)?;
            let clean = cfg
                .checks
                .then(|| audit_run(&inst.graph, &out.tour, &out.ledger).is_clean());
            (out.tour.total, clean)
        }
        StrategySpec::Dfs => {
            let out = run_dfs(&inst.graph)?;
            let clean = cfg
                .checks
                .then(|| audit_run(&inst.graph, &out.tour, &out.ledger).is_clean());
            (out.tour.total, clean)
        }
        StrategySpec::Blocking(d) => {
            let out = run_blocking(&inst.graph, d)?;
            let clean = if cfg.checks {
                let catalog = CycleCatalog::build(&inst.graph)?;
                Some(audit_blocking(&inst.graph, d, &out, &catalog).is_clean())
            } else {
                None
            };
            (out.tour.total, clean)
        }
    };
    let opt = resolve_opt(inst, cfg.opt_limit);
    let ratio = opt.as_ref().map(|(o, _)| &cost / o);
    let bounds_ok = audit_clean.map(|clean| {
        let cost_ok = match &opt {
            Some((o, OptSource::ClosedForm | OptSource::Exact)) => cost >= *o,
            _ => true,
        };
        clean && cost_ok
    });
    Ok(ReportRow {
        instance: inst.id(),
        family: inst.meta.family.clone(),
        params: inst
            .meta
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";"),
        strategy: match strat {
            StrategySpec::Nn => "nn".into(),
            StrategySpec::Dfs => "dfs".into(),
            StrategySpec::Blocking(_) => "blocking".into(),
        },
        delta: match strat {
            StrategySpec::Blocking(d) => d.to_string(),
            _ => String::new(),
        },
        cost,
        opt,
        ratio,
        bounds_ok,
    })
}

/// Run every instance under every strategy. Rows come back sorted by
/// instance id, then strategy, then delta, so repeated runs of the same
/// configuration render byte-identical reports.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>, HarnessError> {
    let jobs: Vec<(&InstanceDescriptor, &StrategySpec)> = cfg
        .instances
        .iter()
        .flat_map(|i| cfg.strategies.iter().map(move |s| (i, s)))
        .collect();
    let mut rows = jobs
        .par_iter()
        .map(|(inst, strat)| run_one(inst, strat, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by(|a, b| {
        a.instance
            .cmp(&b.instance)
            .then_with(|| a.strategy.cmp(&b.strategy))
            .then_with(|| a.delta.cmp(&b.delta))
    });
    Ok(rows)
}

/// Human-readable table; numeric columns as 6-significant-digit decimals.
pub fn render_table(rows: &[ReportRow]) -> String {
    let header = [
        "instance", "strategy", "delta", "cost", "opt", "ratio", "checks",
    ];
    let mut cells: Vec<[String; 7]> = vec![header.map(str::to_string)];
    for r in rows {
        cells.push([
            r.instance.clone(),
            r.strategy.clone(),
            r.delta.clone(),
            decimal(&r.cost),
            r.opt.as_ref().map_or("-".into(), |(o, _)| decimal(o)),
            r.ratio.as_ref().map_or("-".into(), decimal),
            match r.bounds_ok {
                Some(true) => "ok".into(),
                Some(false) => "VIOLATION".into(),
                None => "-".into(),
            },
        ]);
    }
    let mut width = [0usize; 7];
    for row in &cells {
        for (i, c) in row.iter().enumerate() {
            width[i] = width[i].max(c.len());
        }
    }
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:w$}", c, w = width[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Machine-readable CSV with exact rational values.
pub fn render_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("instance,family,params,strategy,delta,cost,opt,ratio,bounds_ok\n");
    for r in rows {
        let fields = [
            csv_field(&r.instance),
            csv_field(&r.family),
            csv_field(&r.params),
            r.strategy.clone(),
            csv_field(&r.delta),
            format_weight(&r.cost),
            r.opt
                .as_ref()
                .map_or(String::new(), |(o, _)| format_weight(o)),
            r.ratio.as_ref().map_or(String::new(), format_weight),
            r.bounds_ok.map_or(String::new(), |b| b.to_string()),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
