use std::fmt;

use ndarray::{Array1, Array2, ArrayView1, Axis};
use serde::{Deserialize, Serialize};

use super::eigen::{eigensolve_with, EigenConfig, Spectrum};
use super::laplacian::{build_laplacian, LaplacianKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeWeights};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingMode {
    /// Eigenvectors of `L` scaled by `1 / sqrt(lambda)`.
    Regular,
    /// The regular embedding moved to its weighted center of mass.
    Shifted,
    /// Eigenvectors of `W^{-1/2} L W^{-1/2}`, scaled back by `W^{-1/2}`.
    Weighted,
}

impl fmt::Display for EmbeddingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmbeddingMode::Regular => "regular",
            EmbeddingMode::Shifted => "shifted",
            EmbeddingMode::Weighted => "weighted",
        })
    }
}

/// Node coordinates, one row per node and one column per informative
/// spectral dimension (the trivial constant direction is dropped).
#[derive(Debug, Clone)]
pub struct Embedding<T> {
    pub mode: EmbeddingMode,
    pub coords: Array2<T>,
    /// Eigenvalue behind each column.
    pub eigenvalues: Vec<T>,
    /// Weights used to shift or normalise, absent for the regular mode.
    pub weights: Option<NodeWeights<T>>,
}

impl<T: Scalar> Embedding<T> {
    pub fn node_count(&self) -> usize {
        self.coords.nrows()
    }

    pub fn dim(&self) -> usize {
        self.coords.ncols()
    }

    pub fn row(&self, i: usize) -> ArrayView1<'_, T> {
        self.coords.row(i)
    }

    /// Inner products between all node vectors.
    pub fn gram(&self) -> Array2<T> {
        self.coords.dot(&self.coords.t())
    }

    /// `sum_i p_i x_i`
    pub fn center_of_mass(&self, p: &[T]) -> Array1<T> {
        let p = ArrayView1::from(p);
        self.coords.t().dot(&p)
    }

    pub fn squared_distance(&self, i: usize, j: usize) -> T {
        self.row(i)
            .iter()
            .zip(self.row(j).iter())
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum()
    }
}

fn check_request<T: Scalar>(graph: &Graph<T>, k: usize) -> Result<()> {
    let n = graph.node_count();
    if k == 0 || k + 1 > n {
        return Err(Error::InvalidParameter(format!(
            "embedding dimension {k} must lie in 1..={}",
            n.saturating_sub(1)
        )));
    }
    graph.ensure_connected()
}

fn informative<T: Scalar>(spectrum: &Spectrum<T>) -> Result<()> {
    // a second zero eigenvalue means more than one component
    if !(spectrum.values[1] > T::of(1e-10)) {
        return Err(Error::Disconnected { components: 2 });
    }
    Ok(())
}

/// Rows `(u_2[i] / sqrt(lambda_2), ..., u_{k+1}[i] / sqrt(lambda_{k+1}))`.
pub fn regular_embedding<T: Scalar>(
    graph: &Graph<T>,
    k: usize,
    config: &EigenConfig,
) -> Result<Embedding<T>> {
    check_request(graph, k)?;
    let op = build_laplacian(graph, LaplacianKind::Regular, None)?;
    let spectrum = eigensolve_with(&op, k + 1, config)?;
    informative(&spectrum)?;
    let mut coords = spectrum.vectors.slice(ndarray::s![.., 1..]).to_owned();
    for (mut col, &lambda) in coords.axis_iter_mut(Axis(1)).zip(&spectrum.values[1..]) {
        let s = lambda.sqrt().recip();
        col.mapv_inplace(|x| x * s);
    }
    Ok(Embedding {
        mode: EmbeddingMode::Regular,
        coords,
        eigenvalues: spectrum.values[1..].to_vec(),
        weights: None,
    })
}

/// Rows `(u_2[i] / sqrt(lambda_2 w_i), ...)` from the eigenvectors of the
/// weighted Laplacian; the weighted centroid of the rows is the origin.
pub fn weighted_embedding<T: Scalar>(
    graph: &Graph<T>,
    weights: &NodeWeights<T>,
    k: usize,
    config: &EigenConfig,
) -> Result<Embedding<T>> {
    check_request(graph, k)?;
    let op = build_laplacian(graph, LaplacianKind::Weighted, Some(weights))?;
    let spectrum = eigensolve_with(&op, k + 1, config)?;
    informative(&spectrum)?;
    let inv_sqrt_w = op.inv_sqrt_weights();
    let mut coords = spectrum.vectors.slice(ndarray::s![.., 1..]).to_owned();
    for (mut col, &lambda) in coords.axis_iter_mut(Axis(1)).zip(&spectrum.values[1..]) {
        let s = lambda.sqrt().recip();
        for (x, &r) in col.iter_mut().zip(inv_sqrt_w) {
            *x = *x * s * r;
        }
    }
    Ok(Embedding {
        mode: EmbeddingMode::Weighted,
        coords,
        eigenvalues: spectrum.values[1..].to_vec(),
        weights: Some(weights.clone()),
    })
}

/// Moves a regular embedding so that the `pi`-weighted center of mass
/// `sum_i pi_i x_i` becomes the origin.
pub fn shifted_embedding<T: Scalar>(
    regular: &Embedding<T>,
    weights: &NodeWeights<T>,
) -> Result<Embedding<T>> {
    if regular.mode != EmbeddingMode::Regular {
        return Err(Error::ModeMismatch {
            expected: EmbeddingMode::Regular.to_string(),
            found: regular.mode.to_string(),
        });
    }
    weights.check_len(regular.node_count())?;
    let center = regular.center_of_mass(weights.pi());
    let coords = &regular.coords - &center.insert_axis(Axis(0));
    Ok(Embedding {
        mode: EmbeddingMode::Shifted,
        coords,
        eigenvalues: regular.eigenvalues.clone(),
        weights: Some(weights.clone()),
    })
}
