//! Command-line driver for the pipeline: generate an edge list, export an
//! ordering, render a bitmap, or print a metrics report. Stages connect
//! through files so each output can be regenerated and diffed on its own.
//!
//! Exit codes: 0 on success, 2 for usage errors (unknown flags or
//! subcommands), 1 for I/O and domain failures. Success paths never write
//! to standard error.

use crate::graph::{Graph, ParseError};
use crate::metrics::{MetricsReport, ReportOptions};
use crate::models::{generate, ModelError, ModelSpec, PfpParams};
use crate::ordering::{bosam_order, NodeOrdering, OrderFileError, OrderingMode};
use crate::render::{encode_pbm, rasterize, RenderError};
use clap::{Parser, Subcommand, ValueEnum};
use std::error::Error;
use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "bosam",
    version,
    about = "Bitmaps of sorted adjacency matrices: generate, order, render, and measure networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelKind {
    Er,
    Ba,
    Pfp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeKind {
    Cohesion,
    Radiation,
}

impl fmt::Display for ModeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeKind::Cohesion => "cohesion",
            ModeKind::Radiation => "radiation",
        })
    }
}

impl From<ModeKind> for OrderingMode {
    fn from(kind: ModeKind) -> OrderingMode {
        match kind {
            ModeKind::Cohesion => OrderingMode::Cohesion,
            ModeKind::Radiation => OrderingMode::Radiation,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a model network and write it as an edge list
    Generate {
        /// Network family
        #[arg(long, value_enum)]
        model: ModelKind,
        /// Target node count
        #[arg(long)]
        nodes: usize,
        /// Target link count
        #[arg(long)]
        links: usize,
        /// Generator seed
        #[arg(long)]
        seed: u64,
        /// Links each new node attaches (ba only)
        #[arg(long = "ba-m", default_value_t = 3)]
        ba_m: u32,
        /// Probability of the one-host, two-peer-link branch (pfp only)
        #[arg(long = "pfp-p", default_value_t = 0.3)]
        pfp_p: f64,
        /// Probability of the one-host, one-peer-link branch (pfp only)
        #[arg(long = "pfp-q", default_value_t = 0.1)]
        pfp_q: f64,
        /// Preference feedback exponent (pfp only)
        #[arg(long = "pfp-delta", default_value_t = 0.048)]
        pfp_delta: f64,
        /// Output edge-list path
        #[arg(long)]
        out: PathBuf,
    },
    /// Sort a network's nodes and write the ordering as text
    Order {
        /// Input edge-list path
        #[arg(long = "in")]
        input: PathBuf,
        /// Tie-break mode between equal-degree nodes
        #[arg(long, value_enum, default_value_t = ModeKind::Cohesion)]
        mode: ModeKind,
        /// Output ordering path
        #[arg(long)]
        out: PathBuf,
    },
    /// Render the sorted adjacency matrix as a binary PBM bitmap
    Render {
        /// Input edge-list path
        #[arg(long = "in")]
        input: PathBuf,
        /// Reuse a previously exported ordering instead of sorting
        #[arg(long = "order-file")]
        order_file: Option<PathBuf>,
        /// Tie-break mode when sorting internally (ignored with --order-file)
        #[arg(long, value_enum, default_value_t = ModeKind::Cohesion)]
        mode: ModeKind,
        /// Output resolution in pixels (square)
        #[arg(long, default_value_t = 1024)]
        size: u32,
        /// Keep only the top 1/zoom of sorted nodes at full resolution
        #[arg(long, default_value_t = 1)]
        zoom: u32,
        /// Output bitmap path
        #[arg(long)]
        out: PathBuf,
    },
    /// Print a JSON topology report to standard output
    Metrics {
        /// Input edge-list path
        #[arg(long = "in")]
        input: PathBuf,
        /// Smallest degree included in the power-law fit
        #[arg(long, default_value_t = 5)]
        kmin: u32,
        /// Comma-separated rich-club ranks (default: powers of two up to N)
        #[arg(long, value_delimiter = ',')]
        ranks: Option<Vec<u32>>,
        /// Breadth-first sources when the mean path is sampled
        #[arg(long = "sample-sources", default_value_t = 1000)]
        sample_sources: usize,
        /// Seed for mean-path source sampling
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A subcommand failed after parsing.
#[derive(Debug)]
enum CliError {
    Io { path: PathBuf, source: io::Error },
    InputFormat { path: PathBuf, source: ParseError },
    OrderFile { path: PathBuf, source: OrderFileError },
    Model(ModelError),
    Render(RenderError),
    Metrics(crate::metrics::MetricsError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::InputFormat { path, source } => {
                write!(f, "{}: {source}", path.display())
            }
            CliError::OrderFile { path, source } => {
                write!(f, "{}: {source}", path.display())
            }
            CliError::Model(e) => write!(f, "{e}"),
            CliError::Render(e) => write!(f, "{e}"),
            CliError::Metrics(e) => write!(f, "{e}"),
        }
    }
}

impl Error for CliError {}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Model(e)
    }
}

impl From<RenderError> for CliError {
    fn from(e: RenderError) -> Self {
        CliError::Render(e)
    }
}

impl From<crate::metrics::MetricsError> for CliError {
    fn from(e: crate::metrics::MetricsError) -> Self {
        CliError::Metrics(e)
    }
}

/// Parse `argv` and run the selected subcommand, returning the process
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version print to stdout and exit 0; real usage
            // errors print to stderr and exit 2.
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let file = File::open(path)
        .map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let (graph, _) = Graph::parse_edge_list(BufReader::new(file))
        .map_err(|source| CliError::InputFormat { path: path.to_path_buf(), source })?;
    Ok(graph)
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Generate {
            model,
            nodes,
            links,
            seed,
            ba_m,
            pfp_p,
            pfp_q,
            pfp_delta,
            out,
        } => {
            let spec = match model {
                ModelKind::Er => ModelSpec::Er { nodes, links, seed },
                ModelKind::Ba => {
                    ModelSpec::Ba { nodes, links, links_per_node: ba_m, seed }
                }
                ModelKind::Pfp => ModelSpec::Pfp {
                    nodes,
                    links,
                    params: PfpParams { p: pfp_p, q: pfp_q, delta: pfp_delta },
                    seed,
                },
            };
            let graph = generate(&spec)?;
            let file = File::create(&out).map_err(io_err(&out))?;
            let mut sink = BufWriter::new(file);
            graph.write_edge_list(&mut sink).map_err(io_err(&out))?;
            sink.flush().map_err(io_err(&out))?;
            Ok(())
        }
        Command::Order { input, mode, out } => {
            let graph = load_graph(&input)?;
            let ordering = bosam_order(&graph, mode.into());
            let file = File::create(&out).map_err(io_err(&out))?;
            let mut sink = BufWriter::new(file);
            ordering.write_order_file(&graph, &mut sink).map_err(io_err(&out))?;
            sink.flush().map_err(io_err(&out))?;
            Ok(())
        }
        Command::Render { input, order_file, mode, size, zoom, out } => {
            let graph = load_graph(&input)?;
            let ordering = match order_file {
                Some(path) => {
                    let file = File::open(&path).map_err(io_err(&path))?;
                    NodeOrdering::read_order_file(&graph, BufReader::new(file)).map_err(
                        |source| CliError::OrderFile { path: path.clone(), source },
                    )?
                }
                None => bosam_order(&graph, mode.into()),
            };
            let bitmap = rasterize(&graph, &ordering, size, zoom)?;
            std::fs::write(&out, encode_pbm(&bitmap)).map_err(io_err(&out))?;
            Ok(())
        }
        Command::Metrics { input, kmin, ranks, sample_sources, seed } => {
            let graph = load_graph(&input)?;
            let options = ReportOptions {
                kmin,
                ranks,
                sample_sources,
                seed,
                ..ReportOptions::default()
            };
            let report = MetricsReport::compute(&graph, &options)?;
            println!("{}", report.to_json_pretty());
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(rest: &[&str]) -> Vec<String> {
        std::iter::once("bosam".to_string())
            .chain(rest.iter().map(|s| s.to_string()))
            .collect()
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(args(&["frob"])), 2);
        assert_eq!(run(args(&["render", "--bogus-flag"])), 2);
        assert_eq!(run(args(&[])), 2);
    }

    #[test]
    fn help_and_version_exit_zero() {
        assert_eq!(run(args(&["--help"])), 0);
        assert_eq!(run(args(&["--version"])), 0);
        assert_eq!(run(args(&["generate", "--help"])), 0);
    }

    #[test]
    fn pipeline_stages_wire_together() {
        let dir = tempfile::tempdir().unwrap();
        let edges = dir.path().join("g.txt");
        let order = dir.path().join("g.order");
        let pbm = dir.path().join("g.pbm");
        let edges_s = edges.to_str().unwrap();

        assert_eq!(
            run(args(&[
                "generate", "--model", "er", "--nodes", "50", "--links", "100", "--seed",
                "7", "--out", edges_s,
            ])),
            0
        );
        let g = Graph::parse_str(&std::fs::read_to_string(&edges).unwrap()).unwrap();
        assert_eq!((g.node_count(), g.link_count()), (50, 100));

        assert_eq!(
            run(args(&["order", "--in", edges_s, "--mode", "radiation", "--out",
                order.to_str().unwrap()])),
            0
        );
        let text = std::fs::read_to_string(&order).unwrap();
        assert_eq!(text.lines().count(), 50);

        assert_eq!(
            run(args(&["render", "--in", edges_s, "--order-file", order.to_str().unwrap(),
                "--size", "32", "--out", pbm.to_str().unwrap()])),
            0
        );
        let bytes = std::fs::read(&pbm).unwrap();
        assert!(bytes.starts_with(b"P4\n32 32\n"));

        assert_eq!(run(args(&["metrics", "--in", edges_s, "--ranks", "2,8,50"])), 0);
    }

    #[test]
    fn domain_and_io_failures_exit_one() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("missing.txt");
        assert_eq!(
            run(args(&["order", "--in", missing.to_str().unwrap(), "--out",
                dir.path().join("o.txt").to_str().unwrap()])),
            1
        );

        let empty = dir.path().join("empty.txt");
        std::fs::write(&empty, "").unwrap();
        assert_eq!(run(args(&["metrics", "--in", empty.to_str().unwrap()])), 1);

        // Infeasible model target.
        assert_eq!(
            run(args(&["generate", "--model", "er", "--nodes", "3", "--links", "9",
                "--seed", "0", "--out", dir.path().join("x.txt").to_str().unwrap()])),
            1
        );
    }
}
