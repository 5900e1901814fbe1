//! Householder tridiagonalisation followed by implicit QL, for dense
//! symmetric matrices. Eigenvectors are accumulated in row storage so the
//! inner loops stay contiguous.

use ndarray::Array2;

use crate::scalar::Scalar;

/// Full eigendecomposition with eigenvalues ascending and eigenvectors as the
/// columns of `vectors`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    pub vectors: Array2<T>,
}

/// Eigendecomposition of a dense symmetric matrix. Only the lower triangle
/// is read.
pub fn symmetric_eigen<T: Scalar>(matrix: &Array2<T>) -> SymmetricEigen<T> {
    let n = matrix.nrows();
    assert_eq!(n, matrix.ncols(), "matrix must be square");
    if n == 0 {
        return SymmetricEigen {
            values: Vec::new(),
            vectors: Array2::zeros((0, 0)),
        };
    }
    // z[c * n + r] holds V[r][c]; V starts as the (symmetric) input.
    let mut z = vec![T::zero(); n * n];
    for r in 0..n {
        for c in 0..=r {
            z[c * n + r] = matrix[[r, c]];
            z[r * n + c] = matrix[[r, c]];
        }
    }
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tred2(n, &mut z, &mut d, &mut e);
    tql2(n, &mut z, &mut d, &mut e);
    finish(n, z, d)
}

/// Eigendecomposition of the symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `off` (`off.len() == diag.len() - 1`).
pub fn tridiagonal_eigen<T: Scalar>(diag: &[T], off: &[T]) -> SymmetricEigen<T> {
    let n = diag.len();
    assert_eq!(off.len() + 1, n.max(1), "off-diagonal length mismatch");
    let mut z = vec![T::zero(); n * n];
    for i in 0..n {
        z[i * n + i] = T::one();
    }
    let mut d = diag.to_vec();
    // tql2 expects e[i] to couple rows i - 1 and i
    let mut e = vec![T::zero(); n];
    e[1..n].copy_from_slice(off);
    tql2(n, &mut z, &mut d, &mut e);
    finish(n, z, d)
}

fn finish<T: Scalar>(n: usize, z: Vec<T>, d: Vec<T>) -> SymmetricEigen<T> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| d[i]).collect();
    let mut vectors = Array2::zeros((n, n));
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[[r, col]] = z[src * n + r];
        }
    }
    SymmetricEigen { values, vectors }
}

/// Householder reduction to tridiagonal form. `z` holds V transposed.
fn tred2<T: Scalar>(n: usize, z: &mut [T], d: &mut [T], e: &mut [T]) {
    // V[r][c] == z[c * n + r]
    macro_rules! v {
        ($r:expr, $c:expr) => {
            z[($c) * n + ($r)]
        };
    }
    for j in 0..n {
        d[j] = v!(n - 1, j);
    }
    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for dk in &d[..i] {
            scale += dk.abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v!(i - 1, j);
                v!(i, j) = T::zero();
                v!(j, i) = T::zero();
            }
        } else {
            for dk in &mut d[..i] {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in &mut e[..i] {
                *ej = T::zero();
            }
            for j in 0..i {
                f = d[j];
                v!(j, i) = f;
                g = e[j] + v!(j, j) * f;
                let col = j * n;
                for k in j + 1..i {
                    let vkj = z[col + k];
                    g += vkj * d[k];
                    e[k] += vkj * f;
                }
                e[j] = g;
            }
            f = T::zero();
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                let col = j * n;
                for k in j..i {
                    z[col + k] -= f * e[k] + g * d[k];
                }
                d[j] = v!(i - 1, j);
                v!(i, j) = T::zero();
            }
        }
        d[i] = h;
    }
    // accumulate transformations
    for i in 0..n - 1 {
        v!(n - 1, i) = v!(i, i);
        v!(i, i) = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for k in 0..=i {
                d[k] = v!(k, i + 1) / h;
            }
            for j in 0..=i {
                let (cj, ci) = (j * n, (i + 1) * n);
                let mut g = T::zero();
                for k in 0..=i {
                    g += z[ci + k] * z[cj + k];
                }
                for k in 0..=i {
                    z[cj + k] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v!(k, i + 1) = T::zero();
        }
    }
    for j in 0..n {
        d[j] = v!(n - 1, j);
        v!(n - 1, j) = T::zero();
    }
    v!(n - 1, n - 1) = T::one();
    e[0] = T::zero();
}

/// Implicit QL on the tridiagonal `(d, e)`, rotating the rows of `z`.
fn tql2<T: Scalar>(n: usize, z: &mut [T], d: &mut [T], e: &mut [T]) {
    if n == 0 {
        return;
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();

    let eps = T::epsilon();
    let two = T::of(2.0);
    let mut f = T::zero();
    let mut tst1 = T::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            loop {
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in &mut d[l + 2..n] {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (lo, hi) = z.split_at_mut((i + 1) * n);
                    let row_i = &mut lo[i * n..];
                    let row_i1 = &mut hi[..n];
                    for (a, b) in row_i.iter_mut().zip(row_i1.iter_mut()) {
                        let hb = *b;
                        *b = s * *a + c * hb;
                        *a = c * *a - s * hb;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }
}
