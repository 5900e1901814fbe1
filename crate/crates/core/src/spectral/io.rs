//! Embedding tables: a TSV with a header row and one line per node, plus a
//! JSON sidecar describing how the table was produced.

use std::io::{BufRead, Write};

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use super::embedding::{Embedding, EmbeddingMode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Run metadata stored next to an embedding table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingSidecar {
    pub mode: EmbeddingMode,
    pub k: usize,
    pub tol: f64,
    pub seed: u64,
    pub nodes: usize,
    /// Eigenvalue behind each coordinate column.
    pub eigenvalues: Vec<f64>,
}

impl EmbeddingSidecar {
    pub fn new<T: Scalar>(embedding: &Embedding<T>, tol: f64, seed: u64) -> Self {
        Self {
            mode: embedding.mode,
            k: embedding.dim(),
            tol,
            seed,
            nodes: embedding.node_count(),
            eigenvalues: embedding.eigenvalues.iter().map(|v| v.as_f64()).collect(),
        }
    }
}

/// Writes `node  x1 .. xk` rows, coordinates at 17 significant digits.
pub fn write_embedding_tsv<T: Scalar, W: Write>(
    embedding: &Embedding<T>,
    graph: &Graph<T>,
    mut out: W,
) -> Result<()> {
    write!(out, "node")?;
    for c in 1..=embedding.dim() {
        write!(out, "\tx{c}")?;
    }
    writeln!(out)?;
    for (i, row) in embedding.coords.rows().into_iter().enumerate() {
        write!(out, "{}", graph.label(i))?;
        for &x in row {
            // adding zero turns -0 into +0
            write!(out, "\t{:.16e}", x.as_f64() + 0.0)?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Reads a table written by [`write_embedding_tsv`] into rows aligned with
/// the graph's node indices. Every graph node must be present exactly once.
pub fn read_embedding_tsv<T: Scalar, R: BufRead>(reader: R, graph: &Graph<T>) -> Result<Array2<T>> {
    let mut lines = reader.lines().enumerate();
    let dim = match lines.next() {
        Some((_, header)) => header?.split('\t').count().saturating_sub(1),
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "missing header".into(),
            })
        }
    };
    let n = graph.node_count();
    let mut coords = Array2::zeros((n, dim));
    let mut seen = vec![false; n];
    for (idx, line) in lines {
        let line = line?;
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let label = fields.next().unwrap_or_default();
        let i = graph.require_index(label)?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::Parse {
                line: lineno,
                message: format!("node '{label}' listed twice"),
            });
        }
        let values: Vec<&str> = fields.collect();
        if values.len() != dim {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected {dim} coordinates, found {}", values.len()),
            });
        }
        for (c, tok) in values.iter().enumerate() {
            let x: f64 = tok.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("cannot parse coordinate '{tok}'"),
            })?;
            coords[[i, c]] = T::of(x);
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::UnknownNode(format!(
            "{} (missing from embedding table)",
            graph.label(i)
        )));
    }
    Ok(coords)
}
