use ndarray::{Array1, Array2};
use serde::Serialize;

use super::kmeans::ClusterModel;
use crate::error::{Error, Result};
use crate::graph::NodeWeights;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterSummaryEntry {
    pub cluster_id: usize,
    pub size: usize,
    /// Sum of the mass weights of the members.
    pub weighted_size: f64,
    /// Node indices, highest internal weight first.
    pub representatives: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterSummary {
    pub clusters: Vec<ClusterSummaryEntry>,
}

/// Picks representatives for every cluster: among the `ceil(fraction *
/// size)` members closest to the cluster's center of mass (members weighted
/// by `mass`), the `top_m` with the largest internal weight `internal`.
///
/// Distances are Euclidean on `points`; ties in distance or weight go to the
/// lower node index.
pub fn summarize_clusters<T: Scalar>(
    model: &ClusterModel<T>,
    points: &Array2<T>,
    internal: &NodeWeights<T>,
    mass: &NodeWeights<T>,
    fraction: f64,
    top_m: usize,
) -> Result<ClusterSummary> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "fraction {fraction} must lie in (0, 1]"
        )));
    }
    let n = points.nrows();
    internal.check_len(n)?;
    mass.check_len(n)?;
    if model.assignment.len() != n {
        return Err(Error::InvalidParameter(format!(
            "model covers {} points, {n} given",
            model.assignment.len()
        )));
    }

    let clusters = model
        .members()
        .into_iter()
        .enumerate()
        .map(|(cluster_id, members)| {
            let weighted_size: T = members.iter().map(|&i| mass.get(i)).sum();
            if members.is_empty() {
                return ClusterSummaryEntry {
                    cluster_id,
                    size: 0,
                    weighted_size: 0.0,
                    representatives: Vec::new(),
                };
            }
            let mut center = Array1::<T>::zeros(points.ncols());
            for &i in &members {
                center.scaled_add(mass.get(i) / weighted_size, &points.row(i));
            }
            let mut by_distance: Vec<(T, usize)> = members
                .iter()
                .map(|&i| {
                    let d: T = points
                        .row(i)
                        .iter()
                        .zip(center.iter())
                        .map(|(&a, &b)| (a - b) * (a - b))
                        .sum();
                    (d, i)
                })
                .collect();
            by_distance.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite").then(a.1.cmp(&b.1)));
            let keep = ((fraction * members.len() as f64).ceil() as usize).clamp(1, members.len());
            let mut close: Vec<usize> = by_distance[..keep].iter().map(|&(_, i)| i).collect();
            close.sort_by(|&a, &b| {
                internal
                    .get(b)
                    .partial_cmp(&internal.get(a))
                    .expect("finite")
                    .then(a.cmp(&b))
            });
            close.truncate(top_m);
            ClusterSummaryEntry {
                cluster_id,
                size: members.len(),
                weighted_size: weighted_size.as_f64(),
                representatives: close,
            }
        })
        .collect();
    Ok(ClusterSummary { clusters })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn model(assignment: Vec<usize>, k: usize, dim: usize) -> ClusterModel<f64> {
        ClusterModel {
            k,
            assignment,
            centers: Array2::zeros((k, dim)),
            inertia: 0.0,
            restarts_used: 1,
            best_restart: 0,
            seed: 0,
        }
    }

    #[test]
    fn singleton_cluster() {
        let m = model(vec![0], 1, 1);
        let w = NodeWeights::unit(1);
        let s = summarize_clusters(&m, &array![[1.0]], &w, &w, 0.5, 5).unwrap();
        assert_eq!(s.clusters[0].representatives, vec![0]);
    }

    #[test]
    fn farthest_high_degree_node_is_filtered_out() {
        // node 0 (degree 10) is far from the unit-mass center of the others
        let points = array![[10.0, 0.0], [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        let d = NodeWeights::new(vec![10.0, 9.0, 1.0, 1.0]).unwrap();
        let unit = NodeWeights::unit(4);
        let m = model(vec![0; 4], 1, 2);
        let s = summarize_clusters(&m, &points, &d, &unit, 0.5, 1).unwrap();
        assert_eq!(s.clusters[0].representatives, vec![1]);
        // with the filter disabled it is pure degree order
        let s = summarize_clusters(&m, &points, &d, &unit, 1.0, 4).unwrap();
        assert_eq!(s.clusters[0].representatives, vec![0, 1, 2, 3]);
    }

    #[test]
    fn empty_cluster_has_no_representatives() {
        let m = model(vec![0, 0], 2, 1);
        let w = NodeWeights::unit(2);
        let s = summarize_clusters(&m, &array![[0.0], [1.0]], &w, &w, 0.5, 3).unwrap();
        assert_eq!(s.clusters[1].size, 0);
        assert!(s.clusters[1].representatives.is_empty());
    }

    #[test]
    fn fraction_must_be_in_range() {
        let m = model(vec![0], 1, 1);
        let w = NodeWeights::unit(1);
        assert!(summarize_clusters(&m, &array![[1.0]], &w, &w, 0.0, 1).is_err());
        assert!(summarize_clusters(&m, &array![[1.0]], &w, &w, 1.5, 1).is_err());
    }
}
