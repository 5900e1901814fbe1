//! Spectral embeddings of undirected graphs whose nodes carry positive
//! weights, together with the random-walk quantities they encode.
//!
//! * [`graph`]: adjacency, node weights, edge-list and weight-file readers.
//! * [`spectral`]: regular and weighted Laplacians, eigensolvers, the
//!   regular, shifted and weighted embeddings, pseudo-inverses.
//! * [`walk`]: exact hitting and commute times, stationary hitting times,
//!   cosine similarity, Dirichlet potentials, relaxation dynamics and a Monte
//!   Carlo simulator of the weighted continuous-time walk.
//! * [`clustering`]: row normalisation, k-means++ with restarts and cluster
//!   summaries.
//!
//! Everything numerical is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` aliases below fix the usual double-precision choice.

// `!(x > 0)` style checks are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod clustering;
mod error;
pub mod graph;
pub mod linalg;
mod scalar;
pub mod spectral;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{Graph, NodeWeights};
pub use scalar::Scalar;
pub use spectral::{Embedding, EmbeddingMode, Spectrum};

pub type Graph64 = Graph<f64>;
pub type NodeWeights64 = NodeWeights<f64>;
pub type Embedding64 = Embedding<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type ClusterModel64 = clustering::ClusterModel<f64>;
pub type DirichletSolution64 = walk::DirichletSolution<f64>;

pub type Graph32 = Graph<f32>;
pub type NodeWeights32 = NodeWeights<f32>;
pub type Embedding32 = Embedding<f32>;
