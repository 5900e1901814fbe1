//! Linear solves against a Laplacian-like operator with a one-dimensional
//! kernel: projected preconditioned conjugate gradients, and a dense
//! Cholesky factorisation of the grounded matrix for small problems.

use ndarray::{s, Array2, ArrayView1};

use super::LinearOperator;
use crate::error::{Error, Result};
use crate::scalar::{axpy, dot, norm, Scalar};

#[derive(Debug, Clone)]
pub struct CgConfig {
    /// Stop when `||r|| <= tol * ||b||`.
    pub tol: f64,
    /// Iteration cap; `None` means `10 n + 100`.
    pub max_iters: Option<usize>,
}

impl Default for CgConfig {
    fn default() -> Self {
        Self {
            tol: 1e-13,
            max_iters: None,
        }
    }
}

fn project<T: Scalar>(x: &mut [T], kernel: &[T]) {
    let c = dot(x, kernel);
    axpy(-c, kernel, x);
}

/// Solves `Op x = b` on the orthogonal complement of `kernel` (unit norm),
/// with a Jacobi preconditioner built from `diagonal`.
///
/// The component of `b` along the kernel is discarded and the returned `x`
/// is orthogonal to the kernel, so for a Laplacian this is `L⁺ b`.
pub fn solve_projected_cg<T: Scalar, Op: LinearOperator<T> + ?Sized>(
    op: &Op,
    kernel: &[T],
    diagonal: &[T],
    b: &[T],
    config: &CgConfig,
) -> Result<Vec<T>> {
    let n = op.dim();
    let mut rhs = b.to_vec();
    project(&mut rhs, kernel);
    let b_norm = norm(&rhs);
    let mut x = vec![T::zero(); n];
    if b_norm == T::zero() {
        return Ok(x);
    }
    let inv_diag: Vec<T> = diagonal
        .iter()
        .map(|&d| if d > T::zero() { d.recip() } else { T::one() })
        .collect();
    let precondition = |r: &[T]| {
        let mut z: Vec<T> = r.iter().zip(&inv_diag).map(|(&ri, &m)| ri * m).collect();
        project(&mut z, kernel);
        z
    };

    let tol = T::of(config.tol).max(T::of(4.0) * T::epsilon());
    let max_iters = config.max_iters.unwrap_or(10 * n + 100);
    let mut r = rhs;
    let mut z = precondition(&r);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![T::zero(); n];
    let mut best = T::infinity();
    let mut best_x = x.clone();
    let mut stalled = 0;

    for _ in 0..max_iters {
        op.apply(&p, &mut ap);
        let pap = dot(&p, &ap);
        if !(pap > T::zero()) {
            break;
        }
        let step = rz / pap;
        axpy(step, &p, &mut x);
        axpy(-step, &ap, &mut r);
        project(&mut r, kernel);
        let rel = norm(&r) / b_norm;
        if rel < best {
            best = rel;
            best_x.copy_from_slice(&x);
            stalled = 0;
        } else {
            stalled += 1;
        }
        if rel <= tol || stalled > 50 {
            break;
        }
        z = precondition(&r);
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for (pi, &zi) in p.iter_mut().zip(&z) {
            *pi = zi + beta * *pi;
        }
    }

    // attainable accuracy is limited by rounding, accept anything close to it
    if best > T::of(1e3) * tol && best > T::epsilon().sqrt() {
        return Err(Error::NotConverged {
            what: "conjugate gradient",
            iterations: max_iters,
            residual: best.as_f64(),
            residuals: vec![best.as_f64()],
        });
    }
    project(&mut best_x, kernel);
    Ok(best_x)
}

/// Dense Cholesky factor of a Laplacian with the last node grounded
/// (its row and column removed), which is positive definite for connected
/// graphs. Solves `L x = b` for `e^T b = 0` and returns the mean-zero solution.
#[derive(Debug, Clone)]
pub struct DenseGroundedSolver<T> {
    n: usize,
    /// Lower-triangular factor of the `(n-1) x (n-1)` grounded matrix.
    factor: Array2<T>,
}

impl<T: Scalar> DenseGroundedSolver<T> {
    /// Factors the Laplacian given densely.
    pub fn new(laplacian: &Array2<T>) -> Result<Self> {
        let n = laplacian.nrows();
        let m = n.saturating_sub(1);
        let mut l = laplacian.slice(s![..m, ..m]).to_owned();
        for j in 0..m {
            let mut diag = l[[j, j]];
            for k in 0..j {
                diag -= l[[j, k]] * l[[j, k]];
            }
            if !(diag > T::zero()) {
                return Err(Error::InvalidParameter(
                    "grounded Laplacian is not positive definite (disconnected graph?)".into(),
                ));
            }
            let djj = diag.sqrt();
            l[[j, j]] = djj;
            for i in j + 1..m {
                let mut s = l[[i, j]];
                for k in 0..j {
                    s -= l[[i, k]] * l[[j, k]];
                }
                l[[i, j]] = s / djj;
            }
            for i in 0..j {
                l[[i, j]] = T::zero();
            }
        }
        Ok(Self { n, factor: l })
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.n;
        let m = n.saturating_sub(1);
        // shift b into the range of L
        let mean = b.iter().copied().sum::<T>() / T::of_usize(n);
        let mut y: Vec<T> = b[..m].iter().map(|&bi| bi - mean).collect();
        for i in 0..m {
            let done = ArrayView1::from(&y[..i]);
            let s = y[i] - self.factor.row(i).slice(s![..i]).dot(&done);
            y[i] = s / self.factor[[i, i]];
        }
        for i in (0..m).rev() {
            let done = ArrayView1::from(&y[i + 1..]);
            let s = y[i] - self.factor.column(i).slice(s![i + 1..]).dot(&done);
            y[i] = s / self.factor[[i, i]];
        }
        y.push(T::zero());
        let shift = y.iter().copied().sum::<T>() / T::of_usize(n);
        y.iter_mut().for_each(|v| *v -= shift);
        y
    }
}
