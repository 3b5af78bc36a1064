//! Command-line front end. Every pipeline stage is independently scriptable;
//! results go to stdout, diagnostics to stderr. Exit code 0 on success, 1 on
//! domain errors (invalid input), 2 on resource-limit aborts.

use std::fs;
use std::io::{self, Read, Write};

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::classcheck;
use crate::graph::{self, Graph, Pattern};
use crate::ilp::{self, IlpError, SolveOptions};
use crate::mis;
use crate::nd::{self, ClassKind};
use crate::pipeline::{self, Coloring, PipelineError, VerifyError};
use crate::testkit::{self, GenerateError, GeneratorKind, GeneratorSpec};

pub const BUDGET_ENV_VAR: &str = "NDCOLOR_BUDGET";

const EXIT_OK: i32 = 0;
const EXIT_DOMAIN: i32 = 1;
const EXIT_RESOURCE: i32 = 2;

#[derive(Parser)]
#[command(name = "ndcolor", version, about = "Exact graph coloring via neighborhood diversity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color a graph optimally and print the coloring
    Color {
        /// DIMACS graph file, or a type-graph file with --from-typegraph; `-` for stdin
        input: String,
        /// Interpret the input as a type graph and color its blow-up
        #[arg(long)]
        from_typegraph: bool,
        /// Also print the covering program before the coloring
        #[arg(long)]
        dump_ilp: bool,
        /// Solver node budget (default from NDCOLOR_BUDGET or built-in)
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the neighborhood-diversity decomposition
    Nd { input: String },
    /// Print the type graph
    Typegraph { input: String },
    /// List the maximal independent sets of a type graph
    Mis { input: String },
    /// Report membership in the (4K1, C4, C6)-free-with-C7 class
    #[command(name = "check-class")]
    CheckClass { input: String },
    /// Verify a coloring file against a graph
    Verify { graph: String, coloring: String },
    /// Generate a seeded instance and print it as DIMACS
    Gen {
        /// Instance kind
        #[arg(long, value_enum)]
        kind: GenKind,
        /// 64-bit seed; identical spec and seed give identical bytes
        #[arg(long)]
        seed: u64,
        /// Vertex count (gnp)
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Edge probability (gnp)
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Smallest class count (blowup: default 2, class-like: default 7)
        #[arg(long)]
        k_min: Option<usize>,
        /// Largest class count (blowup: default 6, class-like: default 13)
        #[arg(long)]
        k_max: Option<usize>,
        /// Smallest class weight
        #[arg(long, default_value_t = 1)]
        weight_min: usize,
        /// Largest class weight
        #[arg(long, default_value_t = 4)]
        weight_max: usize,
        /// Join probability between classes (blowup)
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        /// Loop probability per class (blowup)
        #[arg(long, default_value_t = 0.5)]
        loop_prob: f64,
        /// Filter attempt budget for the rejection-sampled kinds
        #[arg(long, default_value_t = 20_000)]
        attempts: u32,
        /// Append the corpus manifest line to this file (`-` for stderr)
        #[arg(long)]
        manifest: Option<String>,
        /// Write the sampled type graph to this file (blow-up kinds)
        #[arg(long)]
        emit_typegraph: Option<String>,
    },
    /// Brute-force oracles over small inputs
    Oracle {
        #[arg(value_enum)]
        which: OracleWhich,
        input: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Gnp,
    Blowup,
    #[value(name = "class-like")]
    ClassLike,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleWhich {
    Chi,
    Nd,
    Mis,
    Ilp,
}

/// Dispatches one invocation. `argv` includes the program name.
pub fn run(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{err}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{err}");
                    EXIT_DOMAIN
                }
            };
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            err.exit_code()
        }
    }
}

#[derive(Debug)]
enum CliError {
    Io(io::Error),
    Domain(String),
    Resource(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Domain(msg) | CliError::Resource(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Resource(_) => EXIT_RESOURCE,
            _ => EXIT_DOMAIN,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn domain(err: impl std::fmt::Display) -> CliError {
    CliError::Domain(err.to_string())
}

impl From<PipelineError> for CliError {
    fn from(err: PipelineError) -> Self {
        match err {
            PipelineError::Ilp(IlpError::BudgetExceeded { .. }) => {
                CliError::Resource(err.to_string())
            }
            _ => CliError::Domain(err.to_string()),
        }
    }
}

impl From<GenerateError> for CliError {
    fn from(err: GenerateError) -> Self {
        match err {
            GenerateError::AttemptsExhausted { .. } => CliError::Resource(err.to_string()),
            GenerateError::BadParameters(_) => CliError::Domain(err.to_string()),
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn load_graph(path: &str) -> Result<Graph, CliError> {
    graph::parse_dimacs(&read_input(path)?).map_err(domain)
}

fn load_type_graph(path: &str) -> Result<nd::TypeGraph, CliError> {
    nd::parse_type_graph(&read_input(path)?).map_err(domain)
}

fn solve_options(budget: Option<u64>) -> Result<SolveOptions, CliError> {
    let mut opts = SolveOptions::default();
    if let Some(b) = budget {
        opts.node_budget = b;
    } else if let Ok(value) = std::env::var(BUDGET_ENV_VAR) {
        opts.node_budget = value
            .parse()
            .map_err(|_| CliError::Domain(format!("{BUDGET_ENV_VAR}={value} is not a number")))?;
    }
    Ok(opts)
}

fn execute(command: Command, out: &mut dyn Write, err_out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Color { input, from_typegraph, dump_ilp, budget } => {
            let opts = solve_options(budget)?;
            let run = if from_typegraph {
                let t = load_type_graph(&input)?;
                pipeline::run_pipeline_from_type_graph(&t, &opts)?.1
            } else {
                let g = load_graph(&input)?;
                pipeline::run_pipeline(&g, &opts)?
            };
            if dump_ilp {
                write!(out, "{}", ilp::write_ilp(&run.program))?;
            }
            write_coloring(out, &run.coloring)?;
            Ok(())
        }
        Command::Nd { input } => {
            let g = load_graph(&input)?;
            let dec = nd::compute_nd_decomposition(&g);
            writeln!(out, "k {}", dec.class_count())?;
            for (i, class) in dec.classes().iter().enumerate() {
                let kind = match dec.kind(i) {
                    ClassKind::Clique => "clique",
                    ClassKind::IndependentSet => "independent",
                };
                let members: Vec<String> = class.iter().map(|v| (v + 1).to_string()).collect();
                writeln!(out, "c {} {}", kind, members.join(" "))?;
            }
            Ok(())
        }
        Command::Typegraph { input } => {
            let g = load_graph(&input)?;
            let dec = nd::compute_nd_decomposition(&g);
            let t = nd::build_type_graph(&g, &dec).map_err(domain)?;
            write!(out, "{}", nd::write_type_graph(&t))?;
            Ok(())
        }
        Command::Mis { input } => {
            let t = load_type_graph(&input)?;
            let fam = mis::enumerate_mis(&t);
            for set in fam.sets() {
                let members: Vec<String> = set.iter().map(|v| (v + 1).to_string()).collect();
                writeln!(out, "{}", members.join(" "))?;
            }
            Ok(())
        }
        Command::CheckClass { input } => {
            let g = load_graph(&input)?;
            let report = classcheck::check_class(&g);
            writeln!(out, "4k1-free {}", report.is_4k1_free())?;
            writeln!(out, "c4-free {}", report.is_c4_free())?;
            writeln!(out, "c6-free {}", report.is_c6_free())?;
            writeln!(out, "has-c7 {}", report.has_c7())?;
            writeln!(out, "in-class {}", report.in_class())?;
            for pattern in Pattern::ALL {
                if let Some(witness) = report.witness(pattern) {
                    let verts: Vec<String> = witness.iter().map(|v| (v + 1).to_string()).collect();
                    writeln!(out, "w {} {}", pattern.token(), verts.join(" "))?;
                }
            }
            Ok(())
        }
        Command::Verify { graph: graph_path, coloring } => {
            let g = load_graph(&graph_path)?;
            let c = parse_coloring(&read_input(&coloring)?, g.vertex_count())?;
            match pipeline::verify_coloring(&g, &c) {
                Ok(()) => writeln!(out, "valid")?,
                Err(VerifyError::ImproperEdge { u, v, .. }) => {
                    writeln!(out, "invalid edge {} {}", u + 1, v + 1)?;
                }
                Err(VerifyError::UnusedColor { color, .. }) => {
                    writeln!(out, "invalid unused-color {color}")?;
                }
                Err(err @ VerifyError::VertexCountMismatch { .. }) => return Err(domain(err)),
            }
            Ok(())
        }
        Command::Gen {
            kind,
            seed,
            n,
            p,
            k_min,
            k_max,
            weight_min,
            weight_max,
            edge_prob,
            loop_prob,
            attempts,
            manifest,
            emit_typegraph,
        } => {
            let kind = match kind {
                GenKind::Gnp => GeneratorKind::RandomGnp { n, p },
                GenKind::Blowup => GeneratorKind::BlowUpRandom {
                    k_min: k_min.unwrap_or(2),
                    k_max: k_max.unwrap_or(6),
                    weight_min,
                    weight_max,
                    edge_prob,
                    loop_prob,
                    attempts,
                },
                GenKind::ClassLike => GeneratorKind::ClassLike {
                    k_min: k_min.unwrap_or(7),
                    k_max: k_max.unwrap_or(13),
                    weight_min,
                    weight_max,
                    attempts,
                },
            };
            let spec = GeneratorSpec { kind, seed };
            let instance = testkit::generate(&spec)?;
            if let Some(path) = emit_typegraph {
                match &instance.type_graph {
                    Some(t) => fs::write(&path, nd::write_type_graph(t))?,
                    None => {
                        return Err(CliError::Domain(
                            "--emit-typegraph only applies to blow-up based kinds".into(),
                        ))
                    }
                }
            }
            if let Some(path) = manifest {
                let line = testkit::manifest_line(&spec, &instance.graph);
                if path == "-" {
                    writeln!(err_out, "{line}")?;
                } else {
                    let mut existing = fs::read_to_string(&path).unwrap_or_default();
                    existing.push_str(&line);
                    existing.push('\n');
                    fs::write(&path, existing)?;
                }
            }
            write!(out, "{}", graph::write_dimacs(&instance.graph))?;
            Ok(())
        }
        Command::Oracle { which, input } => {
            match which {
                OracleWhich::Chi => {
                    let g = load_graph(&input)?;
                    let chi = testkit::oracle_chromatic(&g).map_err(domain)?;
                    writeln!(out, "{chi}")?;
                }
                OracleWhich::Nd => {
                    let g = load_graph(&input)?;
                    let dec = testkit::oracle_nd(&g).map_err(domain)?;
                    writeln!(out, "k {}", dec.class_count())?;
                    for (i, class) in dec.classes().iter().enumerate() {
                        let kind = match dec.kind(i) {
                            ClassKind::Clique => "clique",
                            ClassKind::IndependentSet => "independent",
                        };
                        let members: Vec<String> =
                            class.iter().map(|v| (v + 1).to_string()).collect();
                        writeln!(out, "c {} {}", kind, members.join(" "))?;
                    }
                }
                OracleWhich::Mis => {
                    let t = load_type_graph(&input)?;
                    let fam = testkit::oracle_mis(&t).map_err(domain)?;
                    for set in fam.sets() {
                        let members: Vec<String> = set.iter().map(|v| (v + 1).to_string()).collect();
                        writeln!(out, "{}", members.join(" "))?;
                    }
                }
                OracleWhich::Ilp => {
                    let program = ilp::parse_ilp(&read_input(&input)?).map_err(domain)?;
                    let optimum = testkit::oracle_ilp(&program).map_err(domain)?;
                    writeln!(out, "{optimum}")?;
                }
            }
            Ok(())
        }
    }
}

/// Coloring output: `s <num_colors>` then one `v <vertex> <color>` line per
/// vertex, 1-based and vertex-sorted.
fn write_coloring(out: &mut dyn Write, c: &Coloring) -> io::Result<()> {
    writeln!(out, "s {}", c.num_colors())?;
    for v in 0..c.vertex_count() {
        writeln!(out, "v {} {}", v + 1, c.color(v))?;
    }
    Ok(())
}

fn parse_coloring(text: &str, n: usize) -> Result<Coloring, CliError> {
    let mut declared: Option<usize> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        let Some(first) = tokens.next() else { continue };
        match first {
            "s" => match (tokens.next().and_then(|t| t.parse::<usize>().ok()), tokens.next()) {
                (Some(chi), None) => declared = Some(chi),
                _ => return Err(CliError::Domain(format!("coloring line {line}: malformed"))),
            },
            "v" => {
                let vertex = tokens.next().and_then(|t| t.parse::<usize>().ok());
                let color = tokens.next().and_then(|t| t.parse::<usize>().ok());
                match (vertex, color, tokens.next()) {
                    (Some(v), Some(c), None) if v >= 1 => pairs.push((v - 1, c)),
                    _ => return Err(CliError::Domain(format!("coloring line {line}: malformed"))),
                }
            }
            other => {
                return Err(CliError::Domain(format!(
                    "coloring line {line}: unknown line type {other:?}"
                )))
            }
        }
    }
    let coloring = Coloring::from_assignments(n, pairs).map_err(domain)?;
    if let Some(chi) = declared {
        if chi != coloring.num_colors() {
            return Err(CliError::Domain(format!(
                "coloring declares {chi} colors but uses {}",
                coloring.num_colors()
            )));
        }
    }
    Ok(coloring)
}
