//! chordkit command line: generate family graphs, run the exact solvers,
//! apply reduction rules and orderings, check chordality, and convert
//! between graph formats.
//!
//! Output is plain, line-oriented `key=value` text and is byte-identical
//! across runs for the same input. Exit codes: 0 success, 2 usage/parse
//! errors, 3 solver capacity exceeded, 1 internal failures.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use chordkit::codec;
use chordkit::elimination::{apply_ordering, EliminationOrdering};
use chordkit::families::{generate, recipe_ordering, FamilySpec};
use chordkit::graph::Graph;
use chordkit::safe_edges::{format_trace, reduce};
use chordkit::solver::{exact_tau_phi, tfm_decide, SolverConfig, SolverError};
use chordkit::{check_chordal, vertex_connectivity};

#[derive(Parser)]
#[command(name = "chordkit", version, about = "Triangulations, fill-in and treewidth for small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the input graph comes from: exactly one of a file, stdin ("-"), or
/// a generated family.
#[derive(Args)]
struct InputArgs {
    /// Read the graph from this file (graph6 or edge list; "-" for stdin).
    #[arg(long, short = 'i', value_name = "FILE")]
    input: Option<String>,
    /// Generate the graph from a family spec, e.g. grid:3x7, rook:4x4,
    /// cocktail:3, tau:2,3,5, path:5, cycle:6, complete:4.
    #[arg(long, value_name = "SPEC", conflicts_with = "input")]
    family: Option<String>,
}

#[derive(Args)]
struct SolverArgs {
    /// Raise the solver's vertex limit (default 22); setting this
    /// acknowledges the 2^n table cost for larger graphs.
    #[arg(long, value_name = "N")]
    limit: Option<usize>,
    /// Worker threads for the subset tables (default 1, or CHORDKIT_THREADS).
    #[arg(long, value_name = "T")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family graph and print it.
    Gen {
        #[command(flatten)]
        input: InputArgs,
        /// Output format: graph6, edges, or dot.
        #[arg(long, default_value = "edges")]
        format: String,
    },
    /// Print n, m, connectivity and (with --exact) fill-in, treewidth and the
    /// gap parameters.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Run the exact solvers.
        #[arg(long)]
        exact: bool,
        /// Also print one witness ordering per optimum.
        #[arg(long, requires = "exact")]
        witness: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Run the safe-vertex reduction loop and print its trace and residual.
    Reduce {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Apply an elimination ordering and report fill, width and madj sizes.
    Triangulate {
        #[command(flatten)]
        input: InputArgs,
        /// Ordering source: a file of whitespace-separated ids, "recipe" for
        /// the input family's recipe, or recipe:SPEC.
        #[arg(long, value_name = "FILE|recipe[:SPEC]")]
        order: String,
    },
    /// Property checks; currently chordality with witnesses.
    Check {
        #[command(flatten)]
        input: InputArgs,
        /// Check chordality and print a verdict plus witness.
        #[arg(long)]
        chordal: bool,
    },
    /// Decide whether a triangulation exists within k of the treewidth and
    /// c of the fill-in.
    Tfm {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        c: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Transcode between graph6, edge-list and DOT formats.
    Convert {
        #[command(flatten)]
        input: InputArgs,
        /// Output format: graph6, edges, or dot.
        #[arg(long)]
        to: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            // A closed pipe (e.g. piping into `head`) is not an error.
            let mut out = std::io::stdout();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = if err.downcast_ref::<SolverError>().is_some_and(|e| {
                matches!(e, SolverError::CapacityExceeded { .. } | SolverError::HardLimit { .. })
            }) {
                3
            } else if err.downcast_ref::<InternalError>().is_some() {
                1
            } else {
                2
            };
            ExitCode::from(code)
        }
    }
}

/// Invariant failures inside this binary (never expected).
#[derive(Debug, thiserror::Error)]
#[error("internal invariant failure: {0}")]
struct InternalError(String);

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Gen { input, format } => {
            let g = load_graph(&input)?;
            render(&g, &format)
        }
        Command::Analyze { input, exact, witness, solver } => {
            let g = load_graph(&input)?;
            analyze(&g, exact, witness, &solver_config(&solver))
        }
        Command::Reduce { input } => {
            let g = load_graph(&input)?;
            if !g.is_connected() {
                return Err(anyhow!("reduce expects a connected graph"));
            }
            let trace = reduce(&g);
            let mut out = format_trace(&trace);
            writeln!(out, "total_fill_added={}", trace.total_fill_added)?;
            writeln!(out, "residual_n={} residual_m={}", trace.residual.order(), trace.residual.size())?;
            out.push_str(&codec::to_edge_list(&trace.residual));
            Ok(out)
        }
        Command::Triangulate { input, order } => {
            let g = load_graph(&input)?;
            let ordering = load_ordering(&order, &input, &g)?;
            let report = apply_ordering(&g, &ordering).map_err(|e| anyhow!("{e}"))?;
            let mut out = String::new();
            writeln!(out, "fill={}", report.total_fill)?;
            writeln!(out, "width={}", report.width)?;
            writeln!(out, "madj_sum={}", report.madj_sizes.iter().sum::<usize>())?;
            let fills: Vec<String> = report
                .fill
                .iter()
                .map(|e| {
                    let (u, v) = e.endpoints();
                    format!("{u}-{v}")
                })
                .collect();
            writeln!(out, "fill_edges={}", if fills.is_empty() { "none".into() } else { fills.join(",") })?;
            Ok(out)
        }
        Command::Check { input, chordal } => {
            if !chordal {
                return Err(anyhow!("nothing to check: pass --chordal"));
            }
            let g = load_graph(&input)?;
            let verdict = check_chordal(&g);
            if verdict.chordal {
                let peo = verdict.peo.ok_or_else(|| InternalError("chordal verdict without peo".into()))?;
                Ok(format!("chordal; peo {}\n", codec::format_ordering(&peo)))
            } else {
                let w = verdict.witness.ok_or_else(|| InternalError("non-chordal verdict without witness".into()))?;
                Ok(format!("non-chordal; witness {}\n", codec::format_ordering(&w)))
            }
        }
        Command::Tfm { input, k, c, solver } => {
            let g = load_graph(&input)?;
            let yes = tfm_decide(&g, k, c, &solver_config(&solver))?;
            Ok(format!("{}\n", if yes { "yes" } else { "no" }))
        }
        Command::Convert { input, to } => {
            let g = load_graph(&input)?;
            render(&g, &to)
        }
    }
}

fn solver_config(args: &SolverArgs) -> SolverConfig {
    let mut config = SolverConfig::default();
    if let Some(limit) = args.limit {
        config.vertex_limit = limit;
    }
    config.threads = args
        .threads
        .or_else(|| std::env::var("CHORDKIT_THREADS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1);
    config
}

fn load_graph(input: &InputArgs) -> Result<Graph> {
    match (&input.input, &input.family) {
        (None, Some(spec)) => {
            let spec: FamilySpec = spec.parse()?;
            Ok(generate(&spec)?)
        }
        (Some(path), None) => {
            let text = if path == "-" {
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
                buf
            } else {
                std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
            };
            parse_graph(&text)
        }
        (None, None) => Err(anyhow!("no input: pass --input FILE (or -) or --family SPEC")),
        (Some(_), Some(_)) => unreachable!("clap rejects conflicting inputs"),
    }
}

/// Sniff the format: a single printable-ASCII token that is not an edge list
/// is treated as graph6, anything else as an edge list.
fn parse_graph(text: &str) -> Result<Graph> {
    let trimmed = text.trim();
    let looks_like_edges = trimmed
        .lines()
        .all(|l| l.trim().is_empty() || l.trim_start().starts_with('#') || l.split('#').next().unwrap_or("").split_whitespace().all(|t| t.parse::<usize>().is_ok()));
    if looks_like_edges && trimmed.lines().count() >= 1 && trimmed.contains(|c: char| c.is_ascii_digit()) {
        codec::from_edge_list(text).map_err(|e| anyhow!("{e}"))
    } else {
        codec::from_graph6(trimmed).map_err(|e| anyhow!("{e}"))
    }
}

fn render(g: &Graph, format: &str) -> Result<String> {
    match format {
        "graph6" | "g6" => Ok(format!("{}\n", codec::to_graph6(g).map_err(|e| anyhow!("{e}"))?)),
        "edges" | "edgelist" => Ok(codec::to_edge_list(g)),
        "dot" => Ok(codec::to_dot(g)),
        other => Err(anyhow!("unknown format {other:?} (use graph6, edges, or dot)")),
    }
}

fn load_ordering(source: &str, input: &InputArgs, g: &Graph) -> Result<EliminationOrdering> {
    let order = if source == "recipe" {
        let spec = input
            .family
            .as_ref()
            .ok_or_else(|| anyhow!("--order recipe needs --family input"))?;
        let spec: FamilySpec = spec.parse()?;
        recipe_ordering(&spec)?.ordering.as_slice().to_vec()
    } else if let Some(spec) = source.strip_prefix("recipe:") {
        let spec: FamilySpec = spec.parse()?;
        recipe_ordering(&spec)?.ordering.as_slice().to_vec()
    } else {
        let text = std::fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
        codec::parse_ordering(&text).map_err(|e| anyhow!("{e}"))?
    };
    EliminationOrdering::new(order, g).map_err(|e| anyhow!("{e}"))
}

fn analyze(g: &Graph, exact: bool, witness: bool, config: &SolverConfig) -> Result<String> {
    let kappa = vertex_connectivity(g);
    if !exact {
        return Ok(format!("n={} m={} kappa={}\n", g.order(), g.size(), kappa));
    }
    let result = exact_tau_phi(g, config)?;
    let mut out = format!(
        "n={} m={} kappa={} mfi={} tw={} tau={} phi={}\n",
        g.order(),
        g.size(),
        kappa,
        result.mfi,
        result.tw,
        result.tau,
        result.phi
    );
    if witness {
        writeln!(out, "mfi_witness={}", codec::format_ordering(result.mfi_witness.as_slice()))?;
        writeln!(out, "tw_witness={}", codec::format_ordering(result.tw_witness.as_slice()))?;
        writeln!(out, "tau_witness={}", codec::format_ordering(result.tau_witness.as_slice()))?;
        writeln!(out, "phi_witness={}", codec::format_ordering(result.phi_witness.as_slice()))?;
    }
    Ok(out)
}
