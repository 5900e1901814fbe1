use ndarray::Array2;

use super::laplacian::{LaplacianKind, LaplacianOperator};
use super::DEFAULT_DENSE_CAP;
use crate::error::{Error, Result};
use crate::linalg::{lanczos_smallest, symmetric_eigen, LanczosConfig, LinearOperator};
use crate::scalar::{axpy, norm, Scalar};

/// Solver settings for [`eigensolve_with`].
#[derive(Debug, Clone)]
pub struct EigenConfig {
    /// Residual tolerance relative to `max(1, lambda)`.
    pub tol: f64,
    pub seed: u64,
    /// Graphs up to this many nodes are decomposed densely.
    pub dense_max: usize,
    /// Krylov dimension cap for the iterative path; `None` means
    /// `50 (k + 1)` clamped to `n`.
    pub max_krylov: Option<usize>,
}

impl Default for EigenConfig {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            seed: 0,
            dense_max: DEFAULT_DENSE_CAP,
            max_krylov: None,
        }
    }
}

/// The `k` smallest eigenpairs of a Laplacian, eigenvalues ascending and
/// eigenvectors as unit columns.
#[derive(Debug, Clone)]
pub struct Spectrum<T> {
    pub kind: LaplacianKind,
    pub values: Vec<T>,
    /// `n x k`, column `c` pairs with `values[c]`.
    pub vectors: Array2<T>,
}

impl<T: Scalar> Spectrum<T> {
    pub fn k(&self) -> usize {
        self.values.len()
    }

    /// Columns `v = W^{-1/2} u` solving `L v = lambda W v` with `v^T W v = 1`.
    /// For the regular kind these are the eigenvectors themselves.
    pub fn generalized_modes(&self, op: &LaplacianOperator<'_, T>) -> Array2<T> {
        let mut v = self.vectors.clone();
        for (mut row, &s) in v.rows_mut().into_iter().zip(op.inv_sqrt_weights()) {
            row.mapv_inplace(|x| x * s);
        }
        v
    }

    /// `||Op u - lambda u||` for every pair.
    pub fn residuals<Op: LinearOperator<T>>(&self, op: &Op) -> Vec<T> {
        self.values
            .iter()
            .enumerate()
            .map(|(c, &lambda)| {
                let u = self.vectors.column(c).to_vec();
                let mut r = op.apply_vec(&u);
                axpy(-lambda, &u, &mut r);
                norm(&r)
            })
            .collect()
    }
}

/// [`eigensolve_with`] using default limits.
pub fn eigensolve<T: Scalar>(
    op: &LaplacianOperator<'_, T>,
    k: usize,
    tol: f64,
    seed: u64,
) -> Result<Spectrum<T>> {
    eigensolve_with(
        op,
        k,
        &EigenConfig {
            tol,
            seed,
            ..Default::default()
        },
    )
}

/// The `k` smallest eigenpairs of `op`.
///
/// Small graphs go through a full dense decomposition; larger ones through
/// Lanczos on the complement of the known kernel vector. Every eigenvector is
/// sign-normalised so its first entry above `1e-8` in magnitude is positive.
pub fn eigensolve_with<T: Scalar>(
    op: &LaplacianOperator<'_, T>,
    k: usize,
    config: &EigenConfig,
) -> Result<Spectrum<T>> {
    let n = op.dim();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "eigenpair count {k} must lie in 1..={n}"
        )));
    }
    if !(config.tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }

    let (values, mut vectors) = if n <= config.dense_max {
        let eig = symmetric_eigen(&op.to_dense());
        let vectors = eig.vectors.slice(ndarray::s![.., ..k]).to_owned();
        (eig.values[..k].to_vec(), vectors)
    } else {
        let kernel = op.kernel_vector();
        let mut values = vec![T::zero()];
        let mut columns = vec![kernel.clone()];
        if k > 1 {
            let cfg = LanczosConfig {
                tol: config.tol,
                max_dim: Some(config.max_krylov.unwrap_or(50 * (k + 1)).min(n - 1)),
                seed: config.seed,
            };
            let (vals, vecs) = lanczos_smallest(op, k - 1, &[kernel], &cfg)?;
            values.extend(vals);
            columns.extend(vecs);
        }
        let mut vectors = Array2::zeros((n, k));
        for (c, col) in columns.iter().enumerate() {
            vectors.column_mut(c).assign(&ndarray::ArrayView1::from(col.as_slice()));
        }
        (values, vectors)
    };

    let threshold = T::of(1e-8);
    for mut col in vectors.columns_mut() {
        if let Some(&first) = col.iter().find(|x| x.abs() > threshold) {
            if first < T::zero() {
                col.mapv_inplace(|x| -x);
            }
        }
    }

    let spectrum = Spectrum {
        kind: op.kind(),
        values,
        vectors,
    };
    let residuals = spectrum.residuals(op);
    let tol = T::of(config.tol);
    let bad = residuals
        .iter()
        .zip(&spectrum.values)
        .any(|(&r, &lambda)| r > tol * lambda.abs().max(T::one()));
    if bad {
        let worst = residuals.iter().fold(T::zero(), |a, &b| a.max(b));
        return Err(Error::NotConverged {
            what: "eigensolver",
            iterations: 0,
            residual: worst.as_f64(),
            residuals: residuals.iter().map(|r| r.as_f64()).collect(),
        });
    }
    Ok(spectrum)
}

/// [`pseudo_inverse_capped`] with the default dense cap.
pub fn pseudo_inverse<T: Scalar>(op: &LaplacianOperator<'_, T>, cutoff: T) -> Result<Array2<T>> {
    pseudo_inverse_capped(op, cutoff, DEFAULT_DENSE_CAP)
}

/// Dense Moore–Penrose pseudo-inverse `sum u u^T / lambda` over eigenvalues
/// above `max(cutoff, n eps lambda_max)`.
pub fn pseudo_inverse_capped<T: Scalar>(
    op: &LaplacianOperator<'_, T>,
    cutoff: T,
    cap: usize,
) -> Result<Array2<T>> {
    let n = op.dim();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let eig = symmetric_eigen(&op.to_dense());
    let lambda_max = eig.values.last().copied().unwrap_or_else(T::zero);
    let threshold = cutoff.max(T::of_usize(n) * T::epsilon() * lambda_max);
    let mut m = Array2::zeros((n, n));
    for (c, &lambda) in eig.values.iter().enumerate() {
        if lambda <= threshold {
            continue;
        }
        let u = eig.vectors.column(c);
        let inv = lambda.recip();
        for i in 0..n {
            let ui = u[i] * inv;
            for j in 0..n {
                m[[i, j]] += ui * u[j];
            }
        }
    }
    Ok(m)
}
