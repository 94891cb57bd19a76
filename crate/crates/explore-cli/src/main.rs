//! `explore` — run exploration strategies on generated or stored graphs,
//! compute offline optima, and reproduce the built-in claim suite.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use explore_core::graph::{Graph, GraphClass};
use explore_core::harness::{self, reproduce};
use explore_core::opt::{opt_cactus, opt_exact, DEFAULT_EXACT_LIMIT};
use explore_core::weight::{decimal, format_weight};

#[derive(Parser)]
#[command(
    name = "explore",
    about = "Simulate online exploration strategies on weighted graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an experiment configuration and print a report table.
    Run {
        /// Experiment configuration file (one directive per line; see the
        /// crate documentation for the format).
        #[arg(long)]
        config: PathBuf,
        /// Also write the report as CSV with exact rational values.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Generate an instance; writes the graph text and a metadata sidecar.
    Gen {
        /// Family name: doubling_tree, spiked_path, double_spiked_path,
        /// spiked_cycle, fan, random_tree, random_unicyclic, random_cactus.
        #[arg(long)]
        family: String,
        /// Family parameter as key=value; repeat for several (e.g.
        /// -p m=3 -p delta=-1/2).
        #[arg(long = "param", short = 'p')]
        params: Vec<String>,
        /// Output path for the graph text; the metadata sidecar is written
        /// next to it with an extra .meta extension.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute the offline optimum of a stored graph.
    Opt {
        /// Graph text file.
        #[arg(long)]
        graph: PathBuf,
        /// Use the exhaustive dynamic program even when the closed form
        /// applies.
        #[arg(long)]
        exact: bool,
        /// Largest vertex count accepted by the exhaustive program.
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        limit: usize,
    },
    /// Run the built-in claim reproduction suite; exits nonzero if any
    /// claim fails.
    Reproduce,
}

fn main() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Run { config, csv } => cmd_run(&config, csv.as_deref()),
        Cmd::Gen {
            family,
            params,
            out,
        } => cmd_gen(&family, &params, &out),
        Cmd::Opt {
            graph,
            exact,
            limit,
        } => cmd_opt(&graph, exact, limit),
        Cmd::Reproduce => cmd_reproduce(),
    }
}

fn cmd_run(config: &Path, csv: Option<&Path>) -> Result<()> {
    let text =
        std::fs::read_to_string(config).with_context(|| format!("reading {}", config.display()))?;
    let base = config.parent().unwrap_or_else(|| Path::new("."));
    let cfg = harness::parse_config(&text, base)?;
    if cfg.instances.is_empty() || cfg.strategies.is_empty() {
        bail!("configuration needs at least one instance and one strategy");
    }
    let rows = harness::run_experiment(&cfg)?;
    print!("{}", harness::render_table(&rows));
    if let Some(path) = csv {
        std::fs::write(path, harness::render_csv(&rows))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if rows.iter().any(|r| r.bounds_ok == Some(false)) {
        bail!("bounds violated; see the checks column");
    }
    Ok(())
}

fn cmd_gen(family: &str, params: &[String], out: &Path) -> Result<()> {
    let line = format!("instance {family} {}\n", params.join(" "));
    let cfg = harness::parse_config(&line, Path::new("."))?;
    let inst = &cfg.instances[0];
    std::fs::write(out, inst.graph.to_text())
        .with_context(|| format!("writing {}", out.display()))?;
    let meta_path = sidecar(out);
    std::fs::write(&meta_path, inst.meta.to_text())
        .with_context(|| format!("writing {}", meta_path.display()))?;
    println!(
        "{}: {} vertices, {} edges, class {} -> {}",
        inst.id(),
        inst.graph.vertex_count(),
        inst.graph.edges().len(),
        inst.graph.classify(),
        out.display()
    );
    Ok(())
}

fn sidecar(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".meta");
    path.with_file_name(name)
}

fn cmd_opt(path: &Path, exact: bool, limit: usize) -> Result<()> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g = Graph::from_text(&text)?;
    let use_closed = !exact && g.classify() != GraphClass::General;
    let result = if use_closed {
        opt_cactus(&g)?
    } else {
        opt_exact(&g, limit)?
    };
    println!(
        "optimum {} ({}) on {} vertices, method {}",
        format_weight(&result.length),
        decimal(&result.length),
        g.vertex_count(),
        if use_closed {
            "closed-form"
        } else {
            "exhaustive"
        },
    );
    for c in &result.per_cycle {
        let note = match &c.long_edge {
            Some(e) => format!(
                "overlong edge {}-{} ({}), walked in and out",
                e.u,
                e.v,
                format_weight(&e.weight)
            ),
            None => "walked around once".to_string(),
        };
        println!(
            "  cycle of length {}: contributes {} ({note})",
            format_weight(&c.cycle.total_length),
            format_weight(&c.contribution),
        );
    }
    Ok(())
}

fn cmd_reproduce() -> Result<()> {
    let results = reproduce::run_all();
    print!("{}", reproduce::render_results(&results));
    if results.iter().any(|r| !r.passed) {
        std::process::exit(1);
    }
    Ok(())
}
