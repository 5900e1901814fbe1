//! Lanczos iteration with full reorthogonalisation for the smallest
//! eigenpairs of a large symmetric operator.
//!
//! The Krylov basis is grown until the wanted Ritz pairs have small residual
//! estimates, then the Ritz vectors are formed and their true residuals are
//! checked. When the recurrence breaks down (an invariant subspace was found)
//! a fresh random vector orthogonal to everything seen so far continues the
//! basis, which lets repeated eigenvalues show up with full multiplicity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dense::tridiagonal_eigen;
use super::LinearOperator;
use crate::error::{Error, Result};
use crate::scalar::{axpy, dot, norm, Scalar};

#[derive(Debug, Clone)]
pub struct LanczosConfig {
    /// Residual tolerance, relative to `max(1, |lambda|)`.
    pub tol: f64,
    /// Upper bound on the Krylov dimension; `None` lets it reach the
    /// operator dimension.
    pub max_dim: Option<usize>,
    pub seed: u64,
}

impl Default for LanczosConfig {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_dim: None,
            seed: 0,
        }
    }
}

/// The `k` smallest eigenpairs of `op` restricted to the orthogonal
/// complement of `deflate` (orthonormal vectors, typically a known kernel).
///
/// Returns eigenvalues ascending and eigenvectors as separate vectors.
///
/// A single Krylov sequence can miss copies of a repeated eigenvalue, so
/// after convergence the smallest eigenpair orthogonal to everything found is
/// computed from a new start vector; while it undercuts the current `k`-th
/// value it is swapped in.
pub fn lanczos_smallest<T: Scalar, Op: LinearOperator<T> + ?Sized>(
    op: &Op,
    k: usize,
    deflate: &[Vec<T>],
    config: &LanczosConfig,
) -> Result<(Vec<T>, Vec<Vec<T>>)> {
    let (mut values, mut vectors) = lanczos_run(op, k, deflate, config)?;
    let n = op.dim();
    let tol = T::of(config.tol);
    for round in 1u64.. {
        if values.is_empty() || deflate.len() + vectors.len() >= n {
            break;
        }
        let mut locked = deflate.to_vec();
        locked.extend(vectors.iter().cloned());
        let probe = LanczosConfig {
            seed: config.seed.wrapping_add(round.wrapping_mul(0x9e37_79b9_7f4a_7c15)),
            ..config.clone()
        };
        let (v, x) = lanczos_run(op, 1, &locked, &probe)?;
        let last = values[k - 1];
        if !(v[0] < last - tol * last.abs().max(T::one())) {
            break;
        }
        let at = values.partition_point(|&u| u <= v[0]);
        values.insert(at, v[0]);
        vectors.insert(at, x.into_iter().next().expect("one vector"));
        values.truncate(k);
        vectors.truncate(k);
    }
    Ok((values, vectors))
}

fn lanczos_run<T: Scalar, Op: LinearOperator<T> + ?Sized>(
    op: &Op,
    k: usize,
    deflate: &[Vec<T>],
    config: &LanczosConfig,
) -> Result<(Vec<T>, Vec<Vec<T>>)> {
    let n = op.dim();
    let available = n.saturating_sub(deflate.len());
    if k == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    if k > available {
        return Err(Error::InvalidParameter(format!(
            "requested {k} eigenpairs from a space of dimension {available}"
        )));
    }
    let max_dim = config.max_dim.unwrap_or(available).clamp(k, available);
    let tol = T::of(config.tol);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut basis: Vec<Vec<T>> = Vec::new();
    let mut alpha: Vec<T> = Vec::new();
    let mut beta: Vec<T> = Vec::new();

    let mut q = fresh_vector(&mut rng, n, deflate, &basis)
        .expect("a random start vector cannot lie in the deflated span");
    let mut w = vec![T::zero(); n];
    let mut next_check = (2 * k + 10).min(max_dim);
    let mut scale = T::zero();
    let mut best_residuals = vec![f64::INFINITY; k];

    loop {
        op.apply(&q, &mut w);
        let a = dot(&q, &w);
        axpy(-a, &q, &mut w);
        if let (Some(prev), Some(&b)) = (basis.last(), beta.last()) {
            axpy(-b, prev, &mut w);
        }
        basis.push(q);
        alpha.push(a);
        // two passes of classical Gram-Schmidt keep the basis orthogonal to
        // working precision
        for _ in 0..2 {
            orthogonalize(&mut w, deflate);
            orthogonalize(&mut w, &basis);
        }
        let mut b = norm(&w);
        scale = scale.max(a.abs() + b);
        let m = basis.len();
        let breakdown = b <= T::of(1e3) * T::epsilon() * scale.max(T::one());
        let exhausted = m >= max_dim;

        if m >= k && (m >= next_check || exhausted || (breakdown && m + deflate.len() >= n)) {
            let tri = tridiagonal_eigen(&alpha, &beta);
            let estimates: Vec<T> = (0..k)
                .map(|i| (b * tri.vectors[[m - 1, i]]).abs())
                .collect();
            let converged = estimates
                .iter()
                .zip(&tri.values)
                .all(|(&r, &theta)| r <= T::of(0.1) * tol * theta.abs().max(T::one()));
            if converged || exhausted {
                let (values, vectors) = ritz_pairs(&basis, &tri.values, &tri.vectors, k);
                let residuals = true_residuals(op, &values, &vectors);
                let ok = residuals
                    .iter()
                    .zip(&values)
                    .all(|(&r, &lambda)| r <= tol * lambda.abs().max(T::one()));
                for (best, r) in best_residuals.iter_mut().zip(&residuals) {
                    *best = best.min(r.as_f64());
                }
                if ok {
                    return Ok((values, vectors));
                }
                if exhausted {
                    let worst = best_residuals.iter().copied().fold(0.0, f64::max);
                    return Err(Error::NotConverged {
                        what: "Lanczos eigensolver",
                        iterations: m,
                        residual: worst,
                        residuals: best_residuals,
                    });
                }
            }
            next_check = (m + (m / 4).max(10)).min(max_dim);
        }

        if breakdown {
            // invariant subspace: decouple and restart from a new direction
            b = T::zero();
            match fresh_vector(&mut rng, n, deflate, &basis) {
                Some(v) => q = v,
                None => {
                    // the whole space is spanned, the tridiagonal is exact
                    let tri = tridiagonal_eigen(&alpha, &beta);
                    return Ok(ritz_pairs(&basis, &tri.values, &tri.vectors, k));
                }
            }
        } else {
            let inv = b.recip();
            q = w.iter().map(|&x| x * inv).collect();
        }
        beta.push(b);
    }
}

fn orthogonalize<T: Scalar>(w: &mut [T], against: &[Vec<T>]) {
    for v in against {
        let c = dot(w, v);
        axpy(-c, v, w);
    }
}

fn fresh_vector<T: Scalar>(
    rng: &mut ChaCha8Rng,
    n: usize,
    deflate: &[Vec<T>],
    basis: &[Vec<T>],
) -> Option<Vec<T>> {
    if deflate.len() + basis.len() >= n {
        return None;
    }
    for _ in 0..8 {
        let mut v: Vec<T> = (0..n).map(|_| T::of(rng.random::<f64>() - 0.5)).collect();
        let before = norm(&v);
        for _ in 0..2 {
            orthogonalize(&mut v, deflate);
            orthogonalize(&mut v, basis);
        }
        let after = norm(&v);
        if after > T::of(1e-6) * before {
            let inv = after.recip();
            v.iter_mut().for_each(|x| *x *= inv);
            return Some(v);
        }
    }
    None
}

fn ritz_pairs<T: Scalar>(
    basis: &[Vec<T>],
    theta: &[T],
    s: &ndarray::Array2<T>,
    k: usize,
) -> (Vec<T>, Vec<Vec<T>>) {
    let n = basis[0].len();
    let vectors = (0..k)
        .map(|i| {
            let mut y = vec![T::zero(); n];
            for (j, qj) in basis.iter().enumerate() {
                axpy(s[[j, i]], qj, &mut y);
            }
            let inv = norm(&y).recip();
            y.iter_mut().for_each(|x| *x *= inv);
            y
        })
        .collect();
    (theta[..k].to_vec(), vectors)
}

fn true_residuals<T: Scalar, Op: LinearOperator<T> + ?Sized>(
    op: &Op,
    values: &[T],
    vectors: &[Vec<T>],
) -> Vec<T> {
    values
        .iter()
        .zip(vectors)
        .map(|(&lambda, v)| {
            let mut r = op.apply_vec(v);
            axpy(-lambda, v, &mut r);
            norm(&r)
        })
        .collect()
}
