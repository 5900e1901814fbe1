use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use wspectral::graph::{
    boost_weights, internal_weights, largest_connected_component, load_edge_list, load_node_weights,
    EdgeListOptions, NodeWeightOptions,
};
use wspectral::{Graph64, NodeWeights64};

use crate::{CliError, GraphArgs, WeightSource};

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))
}

/// Reads the edge list, reducing to the largest component when asked.
pub fn load_graph(args: &GraphArgs) -> Result<Graph64, CliError> {
    let options = EdgeListOptions {
        weighted: !args.unweighted,
        ..Default::default()
    };
    let graph: Graph64 = load_edge_list(open(&args.edges)?, &options)
        .map_err(|e| CliError::Usage(format!("{}: {e}", args.edges.display())))?;
    if !args.lcc {
        return Ok(graph);
    }
    let (lcc, _) = largest_connected_component(&graph);
    let dropped = graph.node_count() - lcc.node_count();
    if dropped > 0 {
        eprintln!(
            "wspectral: kept largest component: {} of {} nodes",
            lcc.node_count(),
            graph.node_count()
        );
    }
    Ok(lcc)
}

pub fn is_explicit(args: &GraphArgs) -> bool {
    !matches!(args.weights, None | Some(WeightSource::Unit)) || args.boost_subset.is_some()
}

/// Node weights from `--weights` (or `default`), then boosted on the subset.
pub fn load_weights(args: &GraphArgs, graph: &Graph64, default: WeightSource) -> Result<NodeWeights64, CliError> {
    let base = match args.weights.unwrap_or(default) {
        WeightSource::Unit => NodeWeights64::unit(graph.node_count()),
        WeightSource::Internal => internal_weights(graph)?,
        WeightSource::File => {
            let path = args
                .weights_file
                .as_ref()
                .ok_or_else(|| CliError::Usage("--weights file needs --weights-file".into()))?;
            load_node_weights(open(path)?, graph, &NodeWeightOptions::default())
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        }
    };
    if args.weights_file.is_some() && args.weights != Some(WeightSource::File) {
        return Err(CliError::Usage("--weights-file requires --weights file".into()));
    }
    let Some(path) = &args.boost_subset else {
        return Ok(base);
    };
    let mut subset = Vec::new();
    for line in open(path)?.lines() {
        let line = line?;
        let label = line.trim();
        if label.is_empty() || label.starts_with('#') {
            continue;
        }
        match graph.index_of(label) {
            Some(i) => subset.push(i),
            // nodes outside the kept component are expected with --lcc
            None if args.lcc => {}
            None => return Err(wspectral::Error::UnknownNode(label.to_string()).into()),
        }
    }
    Ok(boost_weights(&base, &subset, args.boost_factor)?)
}

/// Node index for a label, or a usage error naming it.
pub fn node(graph: &Graph64, label: &str) -> Result<usize, CliError> {
    graph
        .index_of(label)
        .ok_or_else(|| CliError::Usage(format!("unknown node '{label}'")))
}
