//! `packcolor`: recognize, decompose, color, verify and search packing
//! edge-colorings of cubic graphs.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 resource limit or bad input.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use packing_core::color::class_sizes;
use packing_core::colorer::color_graph_report;
use packing_core::families::{
    build_corpus, gen_k4, gen_leaf7, gen_leaf7_pair, gen_petersen, gen_random_clawfree_cubic, gen_ring, gen_tietze,
    CorpusParams, RandomParams,
};
use packing_core::graph::MultiGraph;
use packing_core::io::{
    decomposition_document, parse_assignment, read_graph, write_coloring, write_dot, write_edge_list, write_graph6,
    ColoringDocument, ColoringMeta,
};
use packing_core::oracle::{oracle_search, OracleOptions, OracleOutcome, DEFAULT_BUDGET};
use packing_core::recognition::{find_bridges, find_claw, is_cubic, is_two_edge_connected};
use packing_core::verify::{verify, PackingSpec};

#[derive(Parser)]
#[command(name = "packcolor", version, about = "Packing edge-colorings of claw-free cubic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report cubicity, claw-freeness and bridges; exit 0 iff claw-free cubic.
    Recognize {
        /// Graph file (graph6 or JSON edge list); stdin when omitted or `-`.
        input: Option<PathBuf>,
    },
    /// Print the decomposition (or bridge tree) as JSON.
    Decompose { input: Option<PathBuf> },
    /// Color with 1a, 1b, 1c, 3a; exit 0 iff the result verifies.
    Color {
        input: Option<PathBuf>,
        /// Write the coloring document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a DOT rendering.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a coloring document against a graph; exit 0 iff valid.
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long, default_value = "1,1,1,3")]
        spec: PackingSpec,
    },
    /// Exhaustive search; exit 0 feasible, 1 infeasible, 2 budget exceeded.
    Oracle {
        input: Option<PathBuf>,
        #[arg(long, default_value = "1,1,1,3")]
        spec: PackingSpec,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Emit a graph document.
    Gen {
        family: Family,
        /// Number of diamonds for `ring`.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// For `random`: compose components along a tree of bridges.
        #[arg(long)]
        bridged: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Color and verify the generated corpus for each seed; print a summary.
    Corpus {
        /// Seed range `a..b` (end exclusive) or a single seed.
        #[arg(long, default_value = "1..2")]
        seeds: String,
        /// Largest contracted multigraph order for substitutions.
        #[arg(long, default_value_t = 8)]
        sizes: usize,
        #[arg(long, default_value_t = 150)]
        random: usize,
        #[arg(long, default_value_t = 200)]
        bridged: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    K4,
    Ring,
    Petersen,
    Tietze,
    Leaf7,
    #[value(name = "leaf7-pair")]
    Leaf7Pair,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Graph6,
}

fn read_text(input: Option<&Path>) -> Result<String> {
    match input {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn load(input: Option<&Path>) -> Result<MultiGraph> {
    Ok(read_graph(&read_text(input)?)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn recognize(input: Option<&Path>) -> Result<ExitCode> {
    let g = load(input)?;
    let cubic = is_cubic(&g);
    let claw = find_claw(&g);
    let bridges = find_bridges(&g);
    println!("vertices: {}", g.vertex_count());
    println!("edges: {}", g.edge_count());
    println!("cubic: {cubic}");
    println!("simple: {}", g.is_simple());
    println!("connected: {}", g.is_connected());
    match &claw {
        None => println!("claw-free: true"),
        Some(w) => {
            let leaves: Vec<String> = w.leaves.iter().map(ToString::to_string).collect();
            println!("claw-free: false (center {}, leaves {})", w.center, leaves.join(" "));
        }
    }
    println!("bridges: {}", bridges.len());
    println!("2-edge-connected: {}", is_two_edge_connected(&g));
    Ok(code(cubic && claw.is_none()))
}

fn color(input: Option<&Path>, out: Option<&Path>, dot: Option<&Path>) -> Result<ExitCode> {
    let g = load(input)?;
    let report = match color_graph_report(&g) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("cannot color: {e}");
            return Ok(code(false));
        }
    };
    let violations = verify(&g, &report.coloring, &PackingSpec::default())?;
    let doc = ColoringDocument::new(
        &g,
        &report.coloring,
        ColoringMeta {
            generator: None,
            seed: None,
            variant: Some(report.variant.clone()),
            backtracks: Some(report.backtracks),
        },
    );
    emit(out, &write_coloring(&doc))?;
    if let Some(p) = dot {
        fs::write(p, write_dot(&g, Some(&report.coloring))).with_context(|| format!("writing {}", p.display()))?;
    }
    for v in &violations {
        eprintln!("violation: {v}");
    }
    Ok(code(violations.is_empty()))
}

fn verify_cmd(graph: &Path, coloring: &Path, spec: &PackingSpec) -> Result<ExitCode> {
    let g = load(Some(graph))?;
    let c = parse_assignment(&read_text(Some(coloring))?)?;
    let violations = match verify(&g, &c, spec) {
        Ok(v) => v,
        Err(e) => {
            println!("invalid: {e}");
            return Ok(code(false));
        }
    };
    if violations.is_empty() {
        println!("ok");
    }
    for v in &violations {
        println!("violation: {v}");
    }
    Ok(code(violations.is_empty()))
}

fn oracle(input: Option<&Path>, spec: &PackingSpec, budget: u64) -> Result<ExitCode> {
    let g = load(input)?;
    let r = oracle_search(
        &g,
        spec,
        OracleOptions {
            budget,
            ..OracleOptions::default()
        },
    );
    let (word, status) = match r.outcome {
        OracleOutcome::Feasible(_) => ("feasible", 0),
        OracleOutcome::Infeasible => ("infeasible", 1),
        OracleOutcome::BudgetExceeded => ("budget-exceeded", 2),
    };
    println!("{word}");
    eprintln!("{} search nodes", r.nodes);
    Ok(ExitCode::from(status))
}

fn generate(family: Family, k: Option<usize>, seed: u64, bridged: bool) -> Result<MultiGraph> {
    Ok(match family {
        Family::K4 => gen_k4(),
        Family::Ring => gen_ring(k.context("ring needs --k")?)?,
        Family::Petersen => gen_petersen(),
        Family::Tietze => gen_tietze(),
        Family::Leaf7 => gen_leaf7(),
        Family::Leaf7Pair => gen_leaf7_pair(),
        Family::Random => gen_random_clawfree_cubic(seed, &RandomParams::default(), bridged)?,
    })
}

fn parse_seeds(text: &str) -> Result<std::ops::Range<u64>> {
    match text.split_once("..") {
        Some((a, b)) => {
            let (a, b): (u64, u64) = (a.trim().parse()?, b.trim().parse()?);
            if a >= b {
                bail!("empty seed range {text}");
            }
            Ok(a..b)
        }
        None => {
            let a: u64 = text.trim().parse()?;
            Ok(a..a + 1)
        }
    }
}

struct Row {
    seed: u64,
    graphs: usize,
    three_a: usize,
    backtracks: usize,
    failures: Vec<String>,
}

fn corpus(seeds: &str, sizes: usize, random: usize, bridged: usize) -> Result<ExitCode> {
    let mut rows = Vec::new();
    for seed in parse_seeds(seeds)? {
        let entries = build_corpus(&CorpusParams {
            seed,
            max_h_vertices: sizes,
            random_bridgeless: random,
            random_bridged: bridged,
        })?;
        let results: Vec<Result<(usize, usize), String>> = entries
            .par_iter()
            .map(|e| {
                let r = color_graph_report(&e.graph).map_err(|err| format!("{}: {err}", e.name))?;
                match verify(&e.graph, &r.coloring, &PackingSpec::default()) {
                    Ok(v) if v.is_empty() => Ok((class_sizes(&r.coloring)[3], r.backtracks)),
                    _ => Err(format!("{}: coloring does not verify", e.name)),
                }
            })
            .collect();
        let mut row = Row {
            seed,
            graphs: entries.len(),
            three_a: 0,
            backtracks: 0,
            failures: Vec::new(),
        };
        for r in results {
            match r {
                Ok((a, b)) => {
                    row.three_a += a;
                    row.backtracks += b;
                }
                Err(f) => row.failures.push(f),
            }
        }
        rows.push(row);
    }
    println!("{:>6} {:>7} {:>7} {:>10} {:>8}", "seed", "graphs", "3a", "backtracks", "failures");
    for r in &rows {
        println!(
            "{:>6} {:>7} {:>7} {:>10} {:>8}",
            r.seed,
            r.graphs,
            r.three_a,
            r.backtracks,
            r.failures.len()
        );
    }
    let backtracks: usize = rows.iter().map(|r| r.backtracks).sum();
    if backtracks > 0 {
        println!("note: {backtracks} candidate colorings were rejected by the verifier and retried");
    }
    for f in rows.iter().flat_map(|r| &r.failures) {
        eprintln!("failure: {f}");
    }
    Ok(code(rows.iter().all(|r| r.failures.is_empty())))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Recognize { input } => recognize(input.as_deref()),
        Command::Decompose { input } => {
            let g = load(input.as_deref())?;
            match decomposition_document(&g) {
                Ok(d) => {
                    println!("{}", serde_json::to_string_pretty(&d)?);
                    Ok(code(true))
                }
                Err(e) => {
                    eprintln!("cannot decompose: {e}");
                    Ok(code(false))
                }
            }
        }
        Command::Color { input, out, dot } => color(input.as_deref(), out.as_deref(), dot.as_deref()),
        Command::Verify { graph, coloring, spec } => verify_cmd(&graph, &coloring, &spec),
        Command::Oracle { input, spec, budget } => oracle(input.as_deref(), &spec, budget),
        Command::Gen {
            family,
            k,
            seed,
            bridged,
            format,
            out,
        } => {
            let g = generate(family, k, seed, bridged)?;
            let text = match format {
                Format::Json => write_edge_list(&g),
                Format::Graph6 => write_graph6(&g)?,
            };
            emit(out.as_deref(), &text)?;
            Ok(code(true))
        }
        Command::Corpus {
            seeds,
            sizes,
            random,
            bridged,
        } => corpus(&seeds, sizes, random, bridged),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
