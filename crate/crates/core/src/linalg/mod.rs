//! Numerical kernels: a dense symmetric eigensolver, Lanczos for the low end
//! of sparse spectra, and conjugate gradients on semi-definite systems.

mod cg;
mod dense;
mod lanczos;

pub use cg::{solve_projected_cg, CgConfig, DenseGroundedSolver};
pub use dense::{symmetric_eigen, tridiagonal_eigen, SymmetricEigen};
pub use lanczos::{lanczos_smallest, LanczosConfig};

use crate::scalar::Scalar;

/// Symmetric linear map applied without materialising its matrix.
pub trait LinearOperator<T: Scalar>: Sync {
    fn dim(&self) -> usize;

    /// `y = Op x`; `y` is overwritten.
    fn apply(&self, x: &[T], y: &mut [T]);

    fn apply_vec(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.dim()];
        self.apply(x, &mut y);
        y
    }
}
