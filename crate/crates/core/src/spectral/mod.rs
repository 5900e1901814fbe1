//! Laplacians, their low spectrum, and the regular, shifted and weighted
//! spectral embeddings built from it.

mod eigen;
mod embedding;
pub mod io;
mod laplacian;

pub use eigen::{
    eigensolve, eigensolve_with, pseudo_inverse, pseudo_inverse_capped, EigenConfig, Spectrum,
};
pub use embedding::{
    regular_embedding, shifted_embedding, weighted_embedding, Embedding, EmbeddingMode,
};
pub use laplacian::{build_laplacian, LaplacianKind, LaplacianOperator};

/// Largest node count handled by dense `O(n^3)` routines unless overridden.
pub const DEFAULT_DENSE_CAP: usize = 2000;
