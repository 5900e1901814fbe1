//! Monte Carlo simulation of the weighted continuous-time walk. Shares no
//! linear algebra with the exact routines so the two can check each other.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeWeights};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HittingEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(trials)`.
    pub stderr: f64,
    pub trials: usize,
}

/// Estimates `H_ij` by simulating `trials` independent walks from `i` until
/// they reach `j`: holding times are exponential with rate `d_u / w_u`, jumps
/// go to neighbour `v` with probability `A_uv / d_u`.
///
/// Trial `t` draws from ChaCha stream `t` of `seed`, so the estimate does not
/// depend on how trials are scheduled across threads.
pub fn simulate_hitting<T: Scalar>(
    graph: &Graph<T>,
    weights: &NodeWeights<T>,
    i: usize,
    j: usize,
    trials: usize,
    seed: u64,
) -> Result<HittingEstimate> {
    let n = graph.node_count();
    for k in [i, j] {
        if k >= n {
            return Err(Error::UnknownNode(k.to_string()));
        }
    }
    weights.check_len(n)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("at least one trial is required".into()));
    }
    if i == j {
        return Ok(HittingEstimate {
            mean: 0.0,
            stderr: 0.0,
            trials,
        });
    }
    let (comp, count) = graph.components();
    if comp[i] != comp[j] {
        return Err(Error::Disconnected { components: count });
    }

    // per-node cumulative jump weights and mean holding times
    let jumps: Vec<(Vec<usize>, Vec<f64>)> = (0..n)
        .map(|u| {
            let mut acc = 0.0;
            graph
                .neighbors(u)
                .map(|(v, a)| {
                    acc += a.as_f64();
                    (v, acc)
                })
                .unzip()
        })
        .collect();
    let mean_hold: Vec<f64> = (0..n)
        .map(|u| weights.get(u).as_f64() / graph.strengths()[u].as_f64())
        .collect();

    let samples: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let mut u = i;
            let mut elapsed = 0.0;
            while u != j {
                let hold: f64 = rng.sample(Exp1);
                elapsed += hold * mean_hold[u];
                let (targets, cumulative) = &jumps[u];
                let total = *cumulative.last().expect("connected node has neighbours");
                let x = rng.random::<f64>() * total;
                let pick = cumulative.partition_point(|&c| c <= x).min(targets.len() - 1);
                u = targets[pick];
            }
            elapsed
        })
        .collect();

    let count = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / count;
    let var = if samples.len() > 1 {
        samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (count - 1.0)
    } else {
        0.0
    };
    Ok(HittingEstimate {
        mean,
        stderr: (var / count).sqrt(),
        trials,
    })
}
