//! Clustering of embedded nodes: unit-norm rows, k-means++ with restarts,
//! and per-cluster representatives.

mod kmeans;
mod summary;

pub use kmeans::{kmeans_pp, kmeans_pp_seeding, lloyd, ClusterModel, KMeansConfig, LloydRun};
pub use summary::{summarize_clusters, ClusterSummary, ClusterSummaryEntry};

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::spectral::Embedding;

/// Scales every row of `points` to unit Euclidean norm. The error names the
/// first zero row, by label when a graph is given.
pub fn normalize_points<T: Scalar>(points: &Array2<T>, graph: Option<&Graph<T>>) -> Result<Array2<T>> {
    let mut out = points.clone();
    for (i, mut row) in out.rows_mut().into_iter().enumerate() {
        let norm = row.iter().map(|&x| x * x).sum::<T>().sqrt();
        if !(norm > T::zero()) {
            let name = graph.map_or_else(|| i.to_string(), |g| g.label(i).to_string());
            return Err(Error::ZeroRow(name));
        }
        row.mapv_inplace(|x| x / norm);
    }
    Ok(out)
}

/// Embedding rows scaled to unit length, so that Euclidean k-means on the
/// result clusters by cosine similarity.
pub fn normalize_rows<T: Scalar>(embedding: &Embedding<T>, graph: Option<&Graph<T>>) -> Result<Array2<T>> {
    normalize_points(&embedding.coords, graph)
}
