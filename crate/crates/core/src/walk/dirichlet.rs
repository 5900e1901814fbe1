use super::{PinvSolver, WalkConfig};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeWeights};
use crate::scalar::Scalar;

/// Potentials of the graph seen as a resistor network with node `source`
/// held at 1 and `sink` at 0.
///
/// The solution involves only the adjacency; node weights enter through the
/// derived quantities (`weighted_mean`, `charge`, hitting times).
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletSolution<T> {
    pub source: usize,
    pub sink: usize,
    /// `v` with `v[source] = 1`, `v[sink] = 0` and `L v = alpha (e_source - e_sink)`.
    pub potentials: Vec<T>,
    /// Current (or force) through the pinned pair, the inverse effective
    /// resistance.
    pub alpha: T,
}

impl<T: Scalar> DirichletSolution<T> {
    /// Builds the solution from `z = L⁺ (e_i - e_j)`.
    pub(crate) fn from_dipole(i: usize, j: usize, z: &[T]) -> Self {
        let resistance = z[i] - z[j];
        let potentials = z
            .iter()
            .enumerate()
            .map(|(k, &zk)| match k {
                _ if k == i => T::one(),
                _ if k == j => T::zero(),
                _ => (zk - z[j]) / resistance,
            })
            .collect();
        Self {
            source: i,
            sink: j,
            potentials,
            alpha: resistance.recip(),
        }
    }

    /// `v̄ = sum_k pi_k v_k`
    pub fn weighted_mean(&self, weights: &NodeWeights<T>) -> T {
        self.potentials
            .iter()
            .zip(weights.pi())
            .map(|(&v, &p)| v * p)
            .sum()
    }

    /// `q = sum_k w_k v_k`, the charge held by the capacitors.
    pub fn charge(&self, weights: &NodeWeights<T>) -> T {
        self.potentials
            .iter()
            .zip(weights.values())
            .map(|(&v, &w)| v * w)
            .sum()
    }

    pub fn effective_resistance(&self) -> T {
        self.alpha.recip()
    }

    /// `H_source,sink = q / alpha`
    pub fn hitting_time(&self, weights: &NodeWeights<T>) -> T {
        self.charge(weights) / self.alpha
    }

    /// `H_sink,source = (|w| - q) / alpha`
    pub fn reverse_hitting_time(&self, weights: &NodeWeights<T>) -> T {
        (weights.total() - self.charge(weights)) / self.alpha
    }

    /// `C = |w| / alpha`
    pub fn commute_time(&self, weights: &NodeWeights<T>) -> T {
        weights.total() / self.alpha
    }
}

/// Solves `L v = alpha (e_i - e_j)` with `v_i = 1`, `v_j = 0`.
pub fn dirichlet_solve<T: Scalar>(graph: &Graph<T>, i: usize, j: usize) -> Result<DirichletSolution<T>> {
    let n = graph.node_count();
    for k in [i, j] {
        if k >= n {
            return Err(Error::UnknownNode(k.to_string()));
        }
    }
    if i == j {
        return Err(Error::InvalidParameter(
            "Dirichlet problem needs two distinct nodes".into(),
        ));
    }
    let solver = PinvSolver::new(graph, &WalkConfig::default())?;
    let mut b = vec![T::zero(); n];
    b[i] = T::one();
    b[j] = -T::one();
    let z = solver.solve(graph, &b)?;
    Ok(DirichletSolution::from_dipole(i, j, &z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    #[test]
    fn series_path() {
        let g = fixtures::path::<f64>(3);
        let s = dirichlet_solve(&g, 0, 2).unwrap();
        for (v, want) in s.potentials.iter().zip([1.0, 0.5, 0.0]) {
            assert!((v - want).abs() < 1e-12);
        }
        assert!((s.alpha - 0.5).abs() < 1e-12);
        let w = NodeWeights::unit(3);
        assert!((s.charge(&w) - 1.5).abs() < 1e-12);
        assert!((s.hitting_time(&w) - 3.0).abs() < 1e-12);
        assert!((s.reverse_hitting_time(&w) - 3.0).abs() < 1e-12);
        assert!((s.commute_time(&w) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_midpoint() {
        let g = fixtures::complete::<f64>(3);
        let s = dirichlet_solve(&g, 1, 2).unwrap();
        assert!((s.potentials[0] - 0.5).abs() < 1e-12);
        assert_eq!(s.potentials[1], 1.0);
        assert_eq!(s.potentials[2], 0.0);
        assert!((s.alpha - 1.5).abs() < 1e-12);
    }

    #[test]
    fn single_resistor() {
        let g = Graph::<f64>::from_index_edges(2, &[(0, 1, 1.0)]).unwrap();
        let s = dirichlet_solve(&g, 0, 1).unwrap();
        assert_eq!(s.potentials, vec![1.0, 0.0]);
        assert!((s.alpha - 1.0).abs() < 1e-12);
        let w = NodeWeights::new(vec![4.0, 1.0]).unwrap();
        assert!((s.charge(&w) - 4.0).abs() < 1e-12);
        assert!((s.hitting_time(&w) - 4.0).abs() < 1e-12);
        assert!((s.reverse_hitting_time(&w) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_equal_pins_and_disconnected_graphs() {
        let g = fixtures::path::<f64>(3);
        assert!(dirichlet_solve(&g, 1, 1).is_err());
        assert!(matches!(dirichlet_solve(&g, 0, 9), Err(Error::UnknownNode(_))));
        let g = Graph::<f64>::from_index_edges(4, &[(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(matches!(dirichlet_solve(&g, 0, 1), Err(Error::Disconnected { .. })));
    }
}
