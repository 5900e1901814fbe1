use std::cmp::Ordering;

use ndarray::{Array2, ArrayView1};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct KMeansConfig {
    pub k: usize,
    /// Independent k-means++ seedings; the lowest inertia wins.
    pub restarts: usize,
    pub max_iters: usize,
    /// Lloyd stops once no center moves farther than this.
    pub tol: f64,
    pub seed: u64,
}

impl Default for KMeansConfig {
    fn default() -> Self {
        Self {
            k: 8,
            restarts: 10,
            max_iters: 300,
            tol: 1e-8,
            seed: 0,
        }
    }
}

/// Best clustering found over all restarts.
#[derive(Debug, Clone)]
pub struct ClusterModel<T> {
    pub k: usize,
    /// Cluster id in `0..k` for each point.
    pub assignment: Vec<usize>,
    /// `k x d`
    pub centers: Array2<T>,
    /// Sum of squared distances from points to their assigned centers.
    pub inertia: T,
    pub restarts_used: usize,
    /// Index of the restart that produced this model.
    pub best_restart: usize,
    pub seed: u64,
}

impl<T: Scalar> ClusterModel<T> {
    /// Point indices of each cluster, in increasing order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (i, &c) in self.assignment.iter().enumerate() {
            out[c].push(i);
        }
        out
    }
}

/// One Lloyd run from fixed initial centers.
#[derive(Debug, Clone)]
pub struct LloydRun<T> {
    pub centers: Array2<T>,
    pub assignment: Vec<usize>,
    pub inertia: T,
    /// Inertia after every assignment step, starting with the initial one.
    pub history: Vec<T>,
    pub iterations: usize,
}

fn sq_dist<T: Scalar>(a: ArrayView1<'_, T>, b: ArrayView1<'_, T>) -> T {
    a.iter().zip(b.iter()).map(|(&x, &y)| (x - y) * (x - y)).sum()
}

/// Nearest center for every point (ties to the lowest id) and the squared
/// distance to it.
///
/// Candidates come from the expansion `|p|^2 - 2 p.c + |c|^2` evaluated as one
/// matrix product; every center within rounding of the best candidate is then
/// rechecked with the exact difference so the tie rule holds.
fn assign<T: Scalar>(points: &Array2<T>, centers: &Array2<T>) -> (Vec<usize>, Vec<T>) {
    let cross = points.dot(&centers.t());
    let center_norms: Vec<T> = centers.rows().into_iter().map(|c| c.dot(&c)).collect();
    let slack = T::of(64.0) * T::epsilon();
    points
        .rows()
        .into_iter()
        .zip(cross.rows())
        .map(|(p, cross)| {
            let p_norm = p.dot(&p);
            let scores: Vec<T> = cross
                .iter()
                .zip(&center_norms)
                .map(|(&pc, &cc)| p_norm - (pc + pc) + cc)
                .collect();
            let (lead, &low) = scores
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(Ordering::Equal))
                .expect("at least one center");
            let scale = p_norm + center_norms[lead] + low.abs();
            let mut best = (0, T::infinity());
            for (c, &score) in scores.iter().enumerate() {
                if score <= low + slack * scale {
                    let d = sq_dist(p, centers.row(c));
                    if d < best.1 {
                        best = (c, d);
                    }
                }
            }
            best
        })
        .unzip()
}

fn distinct_rows<T: Scalar>(points: &Array2<T>) -> usize {
    let mut rows: Vec<ArrayView1<'_, T>> = points.rows().into_iter().collect();
    let cmp = |a: &ArrayView1<'_, T>, b: &ArrayView1<'_, T>| {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| x.partial_cmp(y).unwrap_or(Ordering::Equal))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    };
    rows.sort_by(cmp);
    rows.dedup_by(|a, b| cmp(a, b).is_eq());
    rows.len()
}

/// k-means++ seeding: the first center uniformly, each next one with
/// probability proportional to the squared distance to the nearest chosen
/// center.
pub fn kmeans_pp_seeding<T: Scalar, R: Rng>(points: &Array2<T>, k: usize, rng: &mut R) -> Array2<T> {
    let n = points.nrows();
    let mut centers = Array2::zeros((k, points.ncols()));
    let first = rng.random_range(0..n);
    centers.row_mut(0).assign(&points.row(first));
    let mut nearest: Vec<f64> = points
        .rows()
        .into_iter()
        .map(|p| sq_dist(p, points.row(first)).as_f64())
        .collect();
    for c in 1..k {
        let total: f64 = nearest.iter().sum();
        let pick = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut pick = n - 1;
            for (i, &d) in nearest.iter().enumerate() {
                if target < d {
                    pick = i;
                    break;
                }
                target -= d;
            }
            // rounding can land on a zero-weight point at the tail
            if nearest[pick] == 0.0 {
                pick = nearest.iter().rposition(|&d| d > 0.0).unwrap_or(pick);
            }
            pick
        } else {
            rng.random_range(0..n)
        };
        centers.row_mut(c).assign(&points.row(pick));
        for (d, p) in nearest.iter_mut().zip(points.rows()) {
            *d = d.min(sq_dist(p, points.row(pick)).as_f64());
        }
    }
    centers
}

/// Lloyd iterations from `initial` centers.
///
/// A cluster left empty by an assignment step is re-seeded at the point
/// farthest from its own cluster mean, which keeps `k` clusters and never
/// increases the inertia.
pub fn lloyd<T: Scalar>(points: &Array2<T>, initial: Array2<T>, max_iters: usize, tol: f64) -> LloydRun<T> {
    let k = initial.nrows();
    let dim = points.ncols();
    let mut centers = initial;
    let (mut assignment, mut dists) = assign(points, &centers);
    let mut history = vec![dists.iter().copied().sum::<T>()];
    let tol = T::of(tol);
    let mut iterations = 0;

    while iterations < max_iters {
        iterations += 1;
        let mut sums = Array2::<T>::zeros((k, dim));
        let mut counts = vec![0usize; k];
        for (p, &c) in points.rows().into_iter().zip(&assignment) {
            let mut row = sums.row_mut(c);
            row += &p;
            counts[c] += 1;
        }
        let mut next = sums;
        for (mut row, &count) in next.rows_mut().into_iter().zip(&counts) {
            if count > 0 {
                let inv = T::of_usize(count).recip();
                row.mapv_inplace(|x| x * inv);
            }
        }
        let empty: Vec<usize> = (0..k).filter(|&c| counts[c] == 0).collect();
        if !empty.is_empty() {
            let mut spread: Vec<(usize, T)> = points
                .rows()
                .into_iter()
                .zip(&assignment)
                .enumerate()
                .map(|(i, (p, &c))| (i, sq_dist(p, next.row(c))))
                .collect();
            spread.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal).then(a.0.cmp(&b.0)));
            for (&c, &(i, _)) in empty.iter().zip(&spread) {
                next.row_mut(c).assign(&points.row(i));
            }
        }
        let movement = centers
            .rows()
            .into_iter()
            .zip(next.rows())
            .map(|(a, b)| sq_dist(a, b))
            .fold(T::zero(), T::max)
            .sqrt();
        centers = next;
        (assignment, dists) = assign(points, &centers);
        history.push(dists.iter().copied().sum());
        if movement <= tol {
            break;
        }
    }

    LloydRun {
        inertia: dists.iter().copied().sum(),
        centers,
        assignment,
        history,
        iterations,
    }
}

/// k-means++ with `config.restarts` independent runs; restart `r` draws from
/// ChaCha stream `r` of `config.seed`, and ties in inertia go to the lowest
/// restart index, so the result does not depend on thread scheduling.
pub fn kmeans_pp<T: Scalar>(points: &Array2<T>, config: &KMeansConfig) -> Result<ClusterModel<T>> {
    let k = config.k;
    if k == 0 {
        return Err(Error::InvalidParameter("cluster count must be positive".into()));
    }
    if config.restarts == 0 {
        return Err(Error::InvalidParameter("at least one restart is required".into()));
    }
    let distinct = distinct_rows(points);
    if k > distinct {
        return Err(Error::TooManyClusters { k, distinct });
    }
    let runs: Vec<LloydRun<T>> = (0..config.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(r as u64);
            let init = kmeans_pp_seeding(points, k, &mut rng);
            lloyd(points, init, config.max_iters, config.tol)
        })
        .collect();
    let (best_restart, best) = runs
        .into_iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| {
            a.inertia
                .partial_cmp(&b.inertia)
                .unwrap_or(Ordering::Equal)
                .then(ia.cmp(ib))
        })
        .expect("at least one restart");
    Ok(ClusterModel {
        k,
        assignment: best.assignment,
        centers: best.centers,
        inertia: best.inertia,
        restarts_used: config.restarts,
        best_restart,
        seed: config.seed,
    })
}
