//! `wspectral`: spectral embeddings, random-walk statistics and clustering
//! of graphs with node weights.
//!
//! Exit codes: 0 on success, 2 for usage or input errors, 3 when a numerical
//! routine fails to converge.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "wspectral", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    run: RunArgs,
}

/// Options shared by every subcommand.
#[derive(Debug, Args)]
pub struct RunArgs {
    /// Seed for every random choice; drawn from entropy and reported when absent.
    #[arg(long, global = true, env = "WSPECTRAL_SEED")]
    pub seed: Option<u64>,

    /// Refuse to run a seeded command without --seed.
    #[arg(long, global = true, env = "WSPECTRAL_STRICT")]
    pub strict: bool,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "WSPECTRAL_THREADS")]
    pub threads: Option<usize>,

    /// Output path prefix; each command appends its own extensions.
    #[arg(long, global = true, env = "WSPECTRAL_OUT")]
    pub out: Option<PathBuf>,

    /// Write the primary table to standard output instead of a file.
    #[arg(long, global = true)]
    pub stdout: bool,

    /// Record wall-clock timings in JSON sidecars (makes reruns differ).
    #[arg(long, global = true, env = "WSPECTRAL_TIMINGS")]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightSource {
    Unit,
    Internal,
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Regular,
    Shifted,
    Weighted,
}

/// Graph input and node-weight selection.
#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Edge list, one `src dst [weight]` per line.
    #[arg(long, env = "WSPECTRAL_EDGES")]
    pub edges: PathBuf,

    /// Ignore a third column and give every edge weight 1.
    #[arg(long)]
    pub unweighted: bool,

    /// Keep only the largest connected component.
    #[arg(long, env = "WSPECTRAL_LCC")]
    pub lcc: bool,

    /// Node weights (default depends on the command and mode).
    #[arg(long, value_enum)]
    pub weights: Option<WeightSource>,

    /// `node weight` lines, for --weights file.
    #[arg(long)]
    pub weights_file: Option<PathBuf>,

    /// Node labels, one per line, whose weights are multiplied by --boost-factor.
    #[arg(long)]
    pub boost_subset: Option<PathBuf>,

    #[arg(long, default_value_t = 10.0)]
    pub boost_factor: f64,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    #[arg(long, value_enum, default_value_t = Mode::Weighted)]
    pub mode: Mode,

    /// Embedding dimension.
    #[arg(long, default_value_t = 100)]
    pub k: usize,

    /// Eigenpair residual tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a spectral embedding.
    Embed(EmbedArgs),

    /// Embed, normalise rows and cluster with k-means++.
    Cluster {
        #[command(flatten)]
        embed: EmbedArgs,

        /// Cluster a previously written embedding table instead of embedding.
        #[arg(long)]
        embedding: Option<PathBuf>,

        #[arg(long, default_value_t = 20)]
        clusters: usize,

        #[arg(long, default_value_t = 100)]
        restarts: usize,

        #[arg(long, default_value_t = 300)]
        max_iters: usize,

        /// Share of each cluster, closest to its center, eligible as representatives.
        #[arg(long, default_value_t = 0.5)]
        fraction: f64,

        /// Representatives reported per cluster.
        #[arg(long, default_value_t = 5)]
        top_m: usize,
    },

    /// Hitting, commute times and similarity for node pairs.
    Walk {
        #[command(flatten)]
        graph: GraphArgs,

        /// Node pair `i,j`; repeatable.
        #[arg(long = "pair", required = true, value_parser = parse_pair)]
        pairs: Vec<(String, String)>,
    },

    /// Potentials with `i` held at 1 and `j` at 0.
    Dirichlet {
        #[command(flatten)]
        graph: GraphArgs,

        #[arg(long, value_parser = parse_pair)]
        pair: (String, String),
    },

    /// Monte Carlo estimate of a hitting time.
    Simulate {
        #[command(flatten)]
        graph: GraphArgs,

        #[arg(long, value_parser = parse_pair)]
        pair: (String, String),

        #[arg(long, default_value_t = 100_000)]
        trials: usize,
    },

    /// Write a small test graph as an edge list.
    Fixture {
        #[arg(value_enum)]
        kind: FixtureKind,

        /// Node count (ignored for two-triangles).
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FixtureKind {
    Path,
    Cycle,
    Complete,
    TwoTriangles,
}

fn parse_pair(s: &str) -> Result<(String, String), String> {
    match s.split_once(',') {
        Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => {
            Ok((a.trim().to_string(), b.trim().to_string()))
        }
        _ => Err(format!("expected 'i,j', got '{s}'")),
    }
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Library(wspectral::Error),
}

impl From<wspectral::Error> for CliError {
    fn from(e: wspectral::Error) -> Self {
        CliError::Library(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Library(e.into())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Library(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Library(e) => write!(f, "{e}"),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(threads) = cli.run.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let run = &cli.run;
    match &cli.command {
        Command::Embed(args) => commands::embed(run, args),
        Command::Cluster {
            embed,
            embedding,
            clusters,
            restarts,
            max_iters,
            fraction,
            top_m,
        } => commands::cluster(
            run,
            embed,
            &commands::ClusterParams {
                embedding: embedding.clone(),
                clusters: *clusters,
                restarts: *restarts,
                max_iters: *max_iters,
                fraction: *fraction,
                top_m: *top_m,
            },
        ),
        Command::Walk { graph, pairs } => commands::walk(run, graph, pairs),
        Command::Dirichlet { graph, pair } => commands::dirichlet(run, graph, pair),
        Command::Simulate { graph, pair, trials } => commands::simulate(run, graph, pair, *trials),
        Command::Fixture { kind, n } => commands::fixture(run, *kind, *n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wspectral: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
