use ndarray::Array2;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeWeights};
use crate::linalg::LinearOperator;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianKind {
    /// `L = D - A`
    Regular,
    /// `L_W = W^{-1/2} L W^{-1/2}`
    Weighted,
}

/// Matrix-free Laplacian of a graph, optionally normalised by node weights.
#[derive(Debug, Clone)]
pub struct LaplacianOperator<'a, T> {
    kind: LaplacianKind,
    graph: &'a Graph<T>,
    weights: Option<&'a NodeWeights<T>>,
    /// `w^{-1/2}` for the weighted kind, ones otherwise.
    inv_sqrt_w: Vec<T>,
}

const PARALLEL_ROWS: usize = 4096;

pub fn build_laplacian<'a, T: Scalar>(
    graph: &'a Graph<T>,
    kind: LaplacianKind,
    weights: Option<&'a NodeWeights<T>>,
) -> Result<LaplacianOperator<'a, T>> {
    let n = graph.node_count();
    let inv_sqrt_w = match kind {
        LaplacianKind::Regular => vec![T::one(); n],
        LaplacianKind::Weighted => {
            let w = weights.ok_or(Error::MissingWeights)?;
            w.check_len(n)?;
            w.values().iter().map(|&x| x.sqrt().recip()).collect()
        }
    };
    Ok(LaplacianOperator {
        kind,
        graph,
        weights: if kind == LaplacianKind::Weighted { weights } else { None },
        inv_sqrt_w,
    })
}

impl<'a, T: Scalar> LaplacianOperator<'a, T> {
    pub fn kind(&self) -> LaplacianKind {
        self.kind
    }

    pub fn graph(&self) -> &'a Graph<T> {
        self.graph
    }

    pub fn weights(&self) -> Option<&'a NodeWeights<T>> {
        self.weights
    }

    /// `w^{-1/2}` elementwise (all ones for the regular kind).
    pub fn inv_sqrt_weights(&self) -> &[T] {
        &self.inv_sqrt_w
    }

    /// Unit vector spanning the kernel of a connected graph's operator:
    /// `e / sqrt(n)` or `sqrt(pi)`.
    pub fn kernel_vector(&self) -> Vec<T> {
        let n = self.graph.node_count();
        match self.weights {
            None => vec![T::of_usize(n).sqrt().recip(); n],
            Some(w) => w.pi().iter().map(|p| p.sqrt()).collect(),
        }
    }

    pub fn diagonal(&self) -> Vec<T> {
        self.graph
            .strengths()
            .iter()
            .zip(&self.inv_sqrt_w)
            .map(|(&d, &s)| d * s * s)
            .collect()
    }

    fn row(&self, i: usize, x: &[T]) -> T {
        let s = &self.inv_sqrt_w;
        let mut acc = self.graph.strengths()[i] * s[i] * x[i];
        for (j, a) in self.graph.neighbors(i) {
            acc -= a * s[j] * x[j];
        }
        s[i] * acc
    }

    pub fn to_dense(&self) -> Array2<T> {
        let n = self.graph.node_count();
        let s = &self.inv_sqrt_w;
        let mut m = Array2::zeros((n, n));
        for i in 0..n {
            m[[i, i]] = self.graph.strengths()[i] * s[i] * s[i];
            for (j, a) in self.graph.neighbors(i) {
                m[[i, j]] = -a * s[i] * s[j];
            }
        }
        m
    }

    /// Gershgorin bound on the largest eigenvalue.
    pub fn spectral_bound(&self) -> T {
        let s = &self.inv_sqrt_w;
        (0..self.graph.node_count())
            .map(|i| {
                let off: T = self.graph.neighbors(i).map(|(j, a)| a * s[i] * s[j]).sum();
                self.graph.strengths()[i] * s[i] * s[i] + off
            })
            .fold(T::zero(), T::max)
    }
}

impl<T: Scalar> LinearOperator<T> for LaplacianOperator<'_, T> {
    fn dim(&self) -> usize {
        self.graph.node_count()
    }

    fn apply(&self, x: &[T], y: &mut [T]) {
        if y.len() >= PARALLEL_ROWS {
            y.par_chunks_mut(1024).enumerate().for_each(|(c, chunk)| {
                for (off, yi) in chunk.iter_mut().enumerate() {
                    *yi = self.row(c * 1024 + off, x);
                }
            });
        } else {
            for (i, yi) in y.iter_mut().enumerate() {
                *yi = self.row(i, x);
            }
        }
    }
}
