//! Exact statistics of the continuous-time random walk that leaves node `i`
//! at rate `d_i / w_i` and jumps to `j` with probability `A_ij / d_i`.
//!
//! All exact quantities reduce to products with the Laplacian
//! pseudo-inverse `L⁺`, obtained here by linear solves on the complement of
//! the kernel rather than by forming `L⁺`:
//!
//! * hitting time `H_ij = |w| (e_j - e_i)^T L⁺ (e_j - pi)`
//! * commute time `C_ij = |w| (e_i - e_j)^T L⁺ (e_i - e_j)`
//! * stationary hitting time `h_j = |w| (e_j - pi)^T L⁺ (e_j - pi)`
//! * cosine similarity `S_ij = (h_i + h_j - C_ij) / (2 sqrt(h_i h_j))`

mod dirichlet;
mod relaxation;
mod simulate;

pub use dirichlet::{dirichlet_solve, DirichletSolution};
pub use relaxation::relaxation_check;
pub use simulate::{simulate_hitting, HittingEstimate};

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeWeights};
use crate::linalg::{solve_projected_cg, CgConfig, DenseGroundedSolver};
use crate::scalar::Scalar;
use crate::spectral::{build_laplacian, LaplacianKind, DEFAULT_DENSE_CAP};

#[derive(Debug, Clone)]
pub struct WalkConfig {
    /// Graphs up to this size are solved through a dense Cholesky factor of
    /// the grounded Laplacian; larger ones through conjugate gradients.
    pub dense_max: usize,
    /// Largest graph for which [`WalkAnalysis::hitting_matrix`] is allowed.
    pub matrix_cap: usize,
    pub cg: CgConfig,
}

impl Default for WalkConfig {
    fn default() -> Self {
        Self {
            dense_max: DEFAULT_DENSE_CAP,
            matrix_cap: DEFAULT_DENSE_CAP,
            cg: CgConfig::default(),
        }
    }
}

/// Computes `L⁺ b` for right-hand sides orthogonal to `e`.
#[derive(Debug, Clone)]
pub(crate) enum PinvSolver<T> {
    Dense(DenseGroundedSolver<T>),
    Iterative(CgConfig),
}

impl<T: Scalar> PinvSolver<T> {
    pub(crate) fn new(graph: &Graph<T>, config: &WalkConfig) -> Result<Self> {
        graph.ensure_connected()?;
        if graph.node_count() <= config.dense_max {
            let op = build_laplacian(graph, LaplacianKind::Regular, None)?;
            Ok(Self::Dense(DenseGroundedSolver::new(&op.to_dense())?))
        } else {
            Ok(Self::Iterative(config.cg.clone()))
        }
    }

    pub(crate) fn solve(&self, graph: &Graph<T>, b: &[T]) -> Result<Vec<T>> {
        match self {
            Self::Dense(chol) => Ok(chol.solve(b)),
            Self::Iterative(cfg) => {
                let op = build_laplacian(graph, LaplacianKind::Regular, None)?;
                solve_projected_cg(&op, &op.kernel_vector(), &op.diagonal(), b, cfg)
            }
        }
    }
}

/// Hitting, commute and return-time queries for one graph and weighting.
#[derive(Debug, Clone)]
pub struct WalkAnalysis<'a, T> {
    graph: &'a Graph<T>,
    weights: &'a NodeWeights<T>,
    solver: PinvSolver<T>,
    matrix_cap: usize,
}

/// Every pair statistic reported for a query `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairStatistics<T> {
    pub hitting: T,
    pub reverse_hitting: T,
    pub commute: T,
    pub similarity: T,
}

impl<'a, T: Scalar> WalkAnalysis<'a, T> {
    pub fn new(graph: &'a Graph<T>, weights: &'a NodeWeights<T>) -> Result<Self> {
        Self::with_config(graph, weights, &WalkConfig::default())
    }

    pub fn with_config(
        graph: &'a Graph<T>,
        weights: &'a NodeWeights<T>,
        config: &WalkConfig,
    ) -> Result<Self> {
        weights.check_len(graph.node_count())?;
        Ok(Self {
            graph,
            weights,
            solver: PinvSolver::new(graph, config)?,
            matrix_cap: config.matrix_cap,
        })
    }

    pub fn graph(&self) -> &'a Graph<T> {
        self.graph
    }

    pub fn weights(&self) -> &'a NodeWeights<T> {
        self.weights
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i >= self.graph.node_count() {
            return Err(Error::UnknownNode(i.to_string()));
        }
        Ok(())
    }

    /// `L⁺ (e_j - pi)`
    fn centered_potential(&self, j: usize) -> Result<Vec<T>> {
        self.check_node(j)?;
        let mut b: Vec<T> = self.weights.pi().iter().map(|&p| -p).collect();
        b[j] += T::one();
        self.solver.solve(self.graph, &b)
    }

    /// `L⁺ (e_i - e_j)`
    fn dipole_potential(&self, i: usize, j: usize) -> Result<Vec<T>> {
        self.check_node(i)?;
        self.check_node(j)?;
        let mut b = vec![T::zero(); self.graph.node_count()];
        b[i] += T::one();
        b[j] -= T::one();
        self.solver.solve(self.graph, &b)
    }

    /// Mean hitting times of `j` from every start node.
    pub fn hitting_column(&self, j: usize) -> Result<Vec<T>> {
        let z = self.centered_potential(j)?;
        let total = self.weights.total();
        let zj = z[j];
        Ok(z
            .iter()
            .enumerate()
            .map(|(i, &zi)| if i == j { T::zero() } else { total * (zj - zi) })
            .collect())
    }

    /// Mean time for the walk started at `i` to first reach `j`.
    pub fn hitting_time(&self, i: usize, j: usize) -> Result<T> {
        self.check_node(i)?;
        if i == j {
            return Ok(T::zero());
        }
        let z = self.centered_potential(j)?;
        Ok(self.weights.total() * (z[j] - z[i]))
    }

    /// Full matrix `H`, limited to graphs within the configured cap.
    pub fn hitting_matrix(&self) -> Result<Array2<T>> {
        let n = self.graph.node_count();
        if n > self.matrix_cap {
            return Err(Error::TooLarge {
                n,
                cap: self.matrix_cap,
            });
        }
        let mut h = Array2::zeros((n, n));
        for j in 0..n {
            for (i, v) in self.hitting_column(j)?.into_iter().enumerate() {
                h[[i, j]] = v;
            }
        }
        Ok(h)
    }

    /// `(e_i - e_j)^T L⁺ (e_i - e_j)`
    pub fn effective_resistance(&self, i: usize, j: usize) -> Result<T> {
        if i == j {
            self.check_node(i)?;
            return Ok(T::zero());
        }
        let z = self.dipole_potential(i, j)?;
        Ok(z[i] - z[j])
    }

    /// `C_ij = H_ij + H_ji = |w| R_ij`
    pub fn commute_time(&self, i: usize, j: usize) -> Result<T> {
        Ok(self.weights.total() * self.effective_resistance(i, j)?)
    }

    /// Mean hitting time of `j` from the stationary distribution.
    pub fn stationary_hitting(&self, j: usize) -> Result<T> {
        let z = self.centered_potential(j)?;
        let mean: T = z.iter().zip(self.weights.pi()).map(|(&a, &p)| a * p).sum();
        Ok(self.weights.total() * (z[j] - mean))
    }

    /// Stationary hitting times of every node.
    pub fn stationary_hitting_all(&self) -> Result<Vec<T>> {
        (0..self.graph.node_count())
            .map(|j| self.stationary_hitting(j))
            .collect()
    }

    fn similarity_from(&self, i: usize, j: usize, hi: T, hj: T, commute: T) -> Result<T> {
        let floor = T::epsilon().sqrt() * self.weights.total() * T::epsilon().sqrt();
        for (node, h) in [(i, hi), (j, hj)] {
            if !(h > floor) {
                return Err(Error::DegenerateNode(self.graph.label(node).to_string()));
            }
        }
        if i == j {
            return Ok(T::one());
        }
        let s = (hi + hj - commute) / (T::of(2.0) * (hi * hj).sqrt());
        Ok(s.max(-T::one()).min(T::one()))
    }

    /// Cosine of the angle between `x_i - x̄` and `x_j - x̄` in the full
    /// embedding, computed from hitting and commute times.
    pub fn cosine_similarity(&self, i: usize, j: usize) -> Result<T> {
        let hi = self.stationary_hitting(i)?;
        let hj = self.stationary_hitting(j)?;
        let c = self.commute_time(i, j)?;
        self.similarity_from(i, j, hi, hj, c)
    }

    /// `H_ij`, `H_ji`, `C_ij` and `S_ij` from two solves.
    pub fn pair(&self, i: usize, j: usize) -> Result<PairStatistics<T>> {
        let zi = self.centered_potential(i)?;
        let zj = if i == j { zi.clone() } else { self.centered_potential(j)? };
        let total = self.weights.total();
        let pi = self.weights.pi();
        let mean = |z: &[T]| -> T { z.iter().zip(pi).map(|(&a, &p)| a * p).sum() };
        let (hitting, reverse_hitting) = if i == j {
            (T::zero(), T::zero())
        } else {
            (total * (zj[j] - zj[i]), total * (zi[i] - zi[j]))
        };
        // L⁺(e_i - e_j) = zi - zj
        let commute = if i == j {
            T::zero()
        } else {
            total * ((zi[i] - zj[i]) - (zi[j] - zj[j]))
        };
        let hi = total * (zi[i] - mean(&zi));
        let hj = total * (zj[j] - mean(&zj));
        Ok(PairStatistics {
            hitting,
            reverse_hitting,
            commute,
            similarity: self.similarity_from(i, j, hi, hj, commute)?,
        })
    }

    /// Hitting time from the Dirichlet potentials: `q / alpha`.
    pub fn hitting_via_dirichlet(&self, i: usize, j: usize) -> Result<T> {
        let sol = self.dirichlet(i, j)?;
        Ok(sol.hitting_time(self.weights))
    }

    /// Dirichlet problem pinned at `v_i = 1`, `v_j = 0`, sharing this
    /// analysis' factorisation.
    pub fn dirichlet(&self, i: usize, j: usize) -> Result<DirichletSolution<T>> {
        if i == j {
            return Err(Error::InvalidParameter(
                "Dirichlet problem needs two distinct nodes".into(),
            ));
        }
        let z = self.dipole_potential(i, j)?;
        Ok(DirichletSolution::from_dipole(i, j, &z))
    }
}

/// `H_ij` for the walk weighted by `weights`.
pub fn hitting_time<T: Scalar>(
    graph: &Graph<T>,
    weights: &NodeWeights<T>,
    i: usize,
    j: usize,
) -> Result<T> {
    WalkAnalysis::new(graph, weights)?.hitting_time(i, j)
}

/// `H_ij` for unit node weights.
pub fn hitting_time_unit<T: Scalar>(graph: &Graph<T>, i: usize, j: usize) -> Result<T> {
    let unit = NodeWeights::unit(graph.node_count());
    WalkAnalysis::new(graph, &unit)?.hitting_time(i, j)
}

pub fn commute_time<T: Scalar>(
    graph: &Graph<T>,
    weights: &NodeWeights<T>,
    i: usize,
    j: usize,
) -> Result<T> {
    WalkAnalysis::new(graph, weights)?.commute_time(i, j)
}

pub fn stationary_hitting<T: Scalar>(graph: &Graph<T>, weights: &NodeWeights<T>, j: usize) -> Result<T> {
    WalkAnalysis::new(graph, weights)?.stationary_hitting(j)
}

pub fn cosine_similarity<T: Scalar>(
    graph: &Graph<T>,
    weights: &NodeWeights<T>,
    i: usize,
    j: usize,
) -> Result<T> {
    WalkAnalysis::new(graph, weights)?.cosine_similarity(i, j)
}

pub fn hitting_via_dirichlet<T: Scalar>(
    graph: &Graph<T>,
    weights: &NodeWeights<T>,
    i: usize,
    j: usize,
) -> Result<T> {
    WalkAnalysis::new(graph, weights)?.hitting_via_dirichlet(i, j)
}

/// Effective resistance between `i` and `j`; independent of node weights.
pub fn effective_resistance<T: Scalar>(graph: &Graph<T>, i: usize, j: usize) -> Result<T> {
    let unit = NodeWeights::unit(graph.node_count());
    WalkAnalysis::new(graph, &unit)?.effective_resistance(i, j)
}
