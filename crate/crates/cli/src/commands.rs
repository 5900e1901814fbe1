use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use wspectral::clustering::{kmeans_pp, normalize_points, summarize_clusters, KMeansConfig};
use wspectral::graph::{fixtures, internal_weights, write_edge_list};
use wspectral::spectral::io::{read_embedding_tsv, write_embedding_tsv, EmbeddingSidecar};
use wspectral::spectral::{regular_embedding, shifted_embedding, weighted_embedding, EigenConfig};
use wspectral::walk::{simulate_hitting, WalkAnalysis};
use wspectral::{Embedding64, Graph64, NodeWeights64};

use crate::input::{is_explicit, load_graph, load_weights, node};
use crate::{CliError, EmbedArgs, FixtureKind, GraphArgs, Mode, RunArgs, WeightSource};

type Sink = Box<dyn Write>;

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s: OsString = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn create(path: PathBuf) -> Result<Sink, CliError> {
    let file = File::create(&path).map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))?;
    Ok(Box::new(BufWriter::new(file)))
}

fn check_destination(run: &RunArgs) -> Result<(), CliError> {
    if run.out.is_none() && !run.stdout {
        return Err(CliError::Usage("give --out PREFIX or --stdout".into()));
    }
    Ok(())
}

/// The command's main table: standard output under `--stdout`, otherwise
/// `<prefix><suffix>`.
fn primary(run: &RunArgs, suffix: &str) -> Result<Sink, CliError> {
    match (&run.out, run.stdout) {
        (_, true) => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        (Some(prefix), false) => create(with_suffix(prefix, suffix)),
        (None, false) => Err(CliError::Usage("give --out PREFIX or --stdout".into())),
    }
}

/// Side outputs go next to the prefix and are skipped without one.
fn secondary(run: &RunArgs, suffix: &str) -> Result<Option<Sink>, CliError> {
    run.out.as_ref().map(|p| create(with_suffix(p, suffix))).transpose()
}

fn write_json<T: Serialize + ?Sized>(mut out: Sink, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, value).map_err(wspectral::Error::from)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn resolve_seed(run: &RunArgs) -> Result<u64, CliError> {
    match run.seed {
        Some(seed) => Ok(seed),
        None if run.strict => Err(CliError::Usage("--strict requires --seed".into())),
        None => {
            let seed = rand::random();
            eprintln!("wspectral: no --seed given, using {seed}");
            Ok(seed)
        }
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Regular => "regular",
        Mode::Shifted => "shifted",
        Mode::Weighted => "weighted",
    }
}

fn weight_name(source: WeightSource) -> &'static str {
    match source {
        WeightSource::Unit => "unit",
        WeightSource::Internal => "internal",
        WeightSource::File => "file",
    }
}

fn graph_echo(args: &GraphArgs, default: WeightSource) -> Value {
    json!({
        "edges": args.edges.display().to_string(),
        "unweighted": args.unweighted,
        "lcc": args.lcc,
        "weights": weight_name(args.weights.unwrap_or(default)),
        "weights_file": args.weights_file.as_ref().map(|p| p.display().to_string()),
        "boost_subset": args.boost_subset.as_ref().map(|p| p.display().to_string()),
        "boost_factor": args.boost_factor,
    })
}

/// Provenance wrapper shared by all sidecars.
struct Sidecar {
    command: &'static str,
    started: Instant,
    timings: Vec<(&'static str, f64)>,
    record_timings: bool,
}

impl Sidecar {
    fn new(command: &'static str, run: &RunArgs) -> Self {
        Self {
            command,
            started: Instant::now(),
            timings: Vec::new(),
            record_timings: run.timings,
        }
    }

    fn lap(&mut self, stage: &'static str) {
        let total: f64 = self.timings.iter().map(|t| t.1).sum();
        self.timings.push((stage, self.started.elapsed().as_secs_f64() - total));
    }

    fn finish(self, config: Value, result: Value) -> Value {
        let mut doc = json!({
            "tool": "wspectral",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "config": config,
            "result": result,
        });
        if self.record_timings {
            let stages: serde_json::Map<String, Value> =
                self.timings.into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            doc["timings_seconds"] = Value::Object(stages);
        }
        doc
    }
}

fn default_weights(mode: Mode) -> WeightSource {
    match mode {
        Mode::Regular => WeightSource::Unit,
        Mode::Shifted | Mode::Weighted => WeightSource::Internal,
    }
}

fn compute_embedding(
    graph: &Graph64,
    args: &EmbedArgs,
    weights: &NodeWeights64,
    seed: u64,
) -> Result<Embedding64, CliError> {
    let cfg = EigenConfig {
        tol: args.tol,
        seed,
        ..Default::default()
    };
    Ok(match args.mode {
        Mode::Regular => regular_embedding(graph, args.k, &cfg)?,
        Mode::Shifted => shifted_embedding(&regular_embedding(graph, args.k, &cfg)?, weights)?,
        Mode::Weighted => weighted_embedding(graph, weights, args.k, &cfg)?,
    })
}

fn embed_echo(args: &EmbedArgs, seed: u64) -> Value {
    json!({
        "graph": graph_echo(&args.graph, default_weights(args.mode)),
        "mode": mode_name(args.mode),
        "k": args.k,
        "tol": args.tol,
        "seed": seed,
    })
}

pub fn embed(run: &RunArgs, args: &EmbedArgs) -> Result<(), CliError> {
    check_destination(run)?;
    if args.mode == Mode::Regular && is_explicit(&args.graph) {
        return Err(CliError::Usage(
            "the regular embedding uses unit weights; drop --weights/--boost-subset or pick another mode".into(),
        ));
    }
    let seed = resolve_seed(run)?;
    let mut sidecar = Sidecar::new("embed", run);
    let graph = load_graph(&args.graph)?;
    let weights = load_weights(&args.graph, &graph, default_weights(args.mode))?;
    sidecar.lap("load");
    let embedding = compute_embedding(&graph, args, &weights, seed)?;
    sidecar.lap("embed");

    let mut out = primary(run, ".tsv")?;
    write_embedding_tsv(&embedding, &graph, &mut out)?;
    out.flush()?;
    if let Some(side) = secondary(run, ".json")? {
        let result = serde_json::to_value(EmbeddingSidecar::new(&embedding, args.tol, seed))
            .map_err(wspectral::Error::from)?;
        write_json(side, &sidecar.finish(embed_echo(args, seed), result))?;
    }
    Ok(())
}

pub struct ClusterParams {
    pub embedding: Option<PathBuf>,
    pub clusters: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub fraction: f64,
    pub top_m: usize,
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    cluster_id: usize,
    size: usize,
    weighted_size: f64,
    representatives: Vec<&'a str>,
}

pub fn cluster(run: &RunArgs, args: &EmbedArgs, params: &ClusterParams) -> Result<(), CliError> {
    check_destination(run)?;
    if !(params.fraction > 0.0 && params.fraction <= 1.0) {
        return Err(CliError::Usage(format!("--fraction {} must lie in (0, 1]", params.fraction)));
    }
    let seed = resolve_seed(run)?;
    let mut sidecar = Sidecar::new("cluster", run);
    let graph = load_graph(&args.graph)?;
    // in regular mode the weights only enter the cluster summary
    let weights = load_weights(&args.graph, &graph, default_weights(args.mode))?;
    sidecar.lap("load");
    let coords = match &params.embedding {
        Some(path) => {
            let file = File::open(path).map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))?;
            read_embedding_tsv(BufReader::new(file), &graph)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        }
        None => compute_embedding(&graph, args, &weights, seed)?.coords,
    };
    sidecar.lap("embed");
    let points = normalize_points(&coords, Some(&graph))?;
    let model = kmeans_pp(
        &points,
        &KMeansConfig {
            k: params.clusters,
            restarts: params.restarts,
            max_iters: params.max_iters,
            tol: 1e-8,
            seed,
        },
    )?;
    sidecar.lap("kmeans");
    let degrees = internal_weights(&graph)?;
    let summary = summarize_clusters(&model, &points, &degrees, &weights, params.fraction, params.top_m)?;

    let mut out = primary(run, ".tsv")?;
    writeln!(out, "node\tcluster")?;
    for (i, c) in model.assignment.iter().enumerate() {
        writeln!(out, "{}\t{c}", graph.label(i))?;
    }
    out.flush()?;
    let rows: Vec<SummaryRow<'_>> = summary
        .clusters
        .iter()
        .map(|c| SummaryRow {
            cluster_id: c.cluster_id,
            size: c.size,
            weighted_size: c.weighted_size,
            representatives: c.representatives.iter().map(|&i| graph.label(i)).collect(),
        })
        .collect();
    if let Some(side) = secondary(run, ".summary.json")? {
        write_json(side, &rows)?;
    }
    if let Some(side) = secondary(run, ".json")? {
        let mut config = embed_echo(args, seed);
        config["embedding"] = json!(params.embedding.as_ref().map(|p| p.display().to_string()));
        config["clusters"] = json!(params.clusters);
        config["restarts"] = json!(params.restarts);
        config["max_iters"] = json!(params.max_iters);
        config["fraction"] = json!(params.fraction);
        config["top_m"] = json!(params.top_m);
        let result = json!({
            "nodes": graph.node_count(),
            "inertia": model.inertia,
            "best_restart": model.best_restart,
        });
        write_json(side, &sidecar.finish(config, result))?;
    }
    Ok(())
}

pub fn walk(run: &RunArgs, args: &GraphArgs, pairs: &[(String, String)]) -> Result<(), CliError> {
    check_destination(run)?;
    let sidecar = Sidecar::new("walk", run);
    let graph = load_graph(args)?;
    let weights = load_weights(args, &graph, WeightSource::Unit)?;
    let indices = pairs
        .iter()
        .map(|(a, b)| Ok((node(&graph, a)?, node(&graph, b)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let analysis = WalkAnalysis::new(&graph, &weights)?;
    let stats = indices
        .iter()
        .map(|&(i, j)| analysis.pair(i, j))
        .collect::<Result<Vec<_>, _>>()?;

    let mut out = primary(run, ".tsv")?;
    writeln!(out, "i\tj\tH_ij\tH_ji\tC_ij\tS_ij")?;
    for (&(i, j), s) in indices.iter().zip(&stats) {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            graph.label(i),
            graph.label(j),
            s.hitting,
            s.reverse_hitting,
            s.commute,
            s.similarity
        )?;
    }
    out.flush()?;
    if let Some(side) = secondary(run, ".json")? {
        let config = json!({ "graph": graph_echo(args, WeightSource::Unit), "pairs": pairs });
        write_json(side, &sidecar.finish(config, json!({ "pairs": stats.len() })))?;
    }
    Ok(())
}

pub fn dirichlet(run: &RunArgs, args: &GraphArgs, pair: &(String, String)) -> Result<(), CliError> {
    check_destination(run)?;
    let graph = load_graph(args)?;
    let weights = load_weights(args, &graph, WeightSource::Unit)?;
    let (i, j) = (node(&graph, &pair.0)?, node(&graph, &pair.1)?);
    if i == j {
        return Err(CliError::Usage("dirichlet needs two distinct nodes".into()));
    }
    let sol = WalkAnalysis::new(&graph, &weights)?.dirichlet(i, j)?;

    let mut out = primary(run, ".tsv")?;
    writeln!(out, "node\tpotential")?;
    for (k, v) in sol.potentials.iter().enumerate() {
        writeln!(out, "{}\t{v}", graph.label(k))?;
    }
    out.flush()?;
    if let Some(side) = secondary(run, ".json")? {
        let summary = json!({
            "i": pair.0,
            "j": pair.1,
            "alpha": sol.alpha,
            "q": sol.charge(&weights),
            "vbar": sol.weighted_mean(&weights),
            "H_ij": sol.hitting_time(&weights),
            "H_ji": sol.reverse_hitting_time(&weights),
            "C_ij": sol.commute_time(&weights),
        });
        write_json(side, &summary)?;
    }
    Ok(())
}

pub fn simulate(run: &RunArgs, args: &GraphArgs, pair: &(String, String), trials: usize) -> Result<(), CliError> {
    check_destination(run)?;
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let seed = resolve_seed(run)?;
    let graph = load_graph(args)?;
    let weights = load_weights(args, &graph, WeightSource::Unit)?;
    let (i, j) = (node(&graph, &pair.0)?, node(&graph, &pair.1)?);
    let est = simulate_hitting(&graph, &weights, i, j, trials, seed)?;
    let doc = json!({
        "i": pair.0,
        "j": pair.1,
        "mean": est.mean,
        "stderr": est.stderr,
        "trials": est.trials,
        "seed": seed,
    });
    write_json(primary(run, ".json")?, &doc)
}

pub fn fixture(run: &RunArgs, kind: FixtureKind, n: usize) -> Result<(), CliError> {
    check_destination(run)?;
    let min = match kind {
        FixtureKind::Cycle => 3,
        FixtureKind::Path | FixtureKind::Complete => 2,
        FixtureKind::TwoTriangles => 0,
    };
    if n < min {
        return Err(CliError::Usage(format!("this fixture needs at least {min} nodes")));
    }
    let graph: Graph64 = match kind {
        FixtureKind::Path => fixtures::path(n),
        FixtureKind::Cycle => fixtures::cycle(n),
        FixtureKind::Complete => fixtures::complete(n),
        FixtureKind::TwoTriangles => fixtures::two_triangles(),
    };
    let mut out = primary(run, ".tsv")?;
    write_edge_list(&graph, &mut out)?;
    out.flush()?;
    Ok(())
}
