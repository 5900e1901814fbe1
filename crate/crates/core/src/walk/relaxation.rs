use crate::error::{Error, Result};
use crate::graph::{Graph, NodeWeights};
use crate::linalg::symmetric_eigen;
use crate::scalar::Scalar;
use crate::spectral::{build_laplacian, LaplacianKind, DEFAULT_DENSE_CAP};

/// Potentials `v(t) = exp(-W^{-1} L t) v0` of the RC network (capacitances
/// `w`, conductances `A`) after relaxing for time `t`.
///
/// Evaluated by expanding `v0` in the generalised eigenmodes
/// `L v = lambda W v`, so it is limited to graphs within the dense cap.
pub fn relaxation_check<T: Scalar>(
    graph: &Graph<T>,
    weights: &NodeWeights<T>,
    v0: &[T],
    t: T,
) -> Result<Vec<T>> {
    let n = graph.node_count();
    if v0.len() != n {
        return Err(Error::InvalidParameter(format!(
            "initial state has {} entries for {n} nodes",
            v0.len()
        )));
    }
    if !(t >= T::zero()) {
        return Err(Error::InvalidParameter(format!("time {t} must be non-negative")));
    }
    if n > DEFAULT_DENSE_CAP {
        return Err(Error::TooLarge {
            n,
            cap: DEFAULT_DENSE_CAP,
        });
    }
    if t == T::zero() {
        return Ok(v0.to_vec());
    }
    let op = build_laplacian(graph, LaplacianKind::Weighted, Some(weights))?;
    let eig = symmetric_eigen(&op.to_dense());
    let s = op.inv_sqrt_weights();
    // u = W^{1/2} v0, expand in the orthonormal eigenvectors of L_W
    let u: Vec<T> = v0.iter().zip(s).map(|(&v, &si)| v / si).collect();
    let mut out = vec![T::zero(); n];
    for (c, &lambda) in eig.values.iter().enumerate() {
        let col = eig.vectors.column(c);
        let coef: T = col.iter().zip(&u).map(|(&a, &b)| a * b).sum();
        let decay = (-lambda.max(T::zero()) * t).exp() * coef;
        for (o, &a) in out.iter_mut().zip(col.iter()) {
            *o += decay * a;
        }
    }
    Ok(out.iter().zip(s).map(|(&o, &si)| o * si).collect())
}
