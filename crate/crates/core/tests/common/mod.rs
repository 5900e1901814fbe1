#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wspectral::{Graph64, NodeWeights64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Weight in `(0, 2]`.
pub fn edge_weight(rng: &mut ChaCha8Rng) -> f64 {
    2.0 * (1.0 - rng.random::<f64>())
}

/// Random connected graph: a random spanning tree plus extra edges with
/// probability `p`, weights in `(0, 2]`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph64 {
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.random_range(0..i);
        edges.push((j, i, edge_weight(rng)));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j, edge_weight(rng)));
            }
        }
    }
    Graph64::from_index_edges(n, &edges).unwrap()
}

/// Positive weights spread over two orders of magnitude.
pub fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> NodeWeights64 {
    NodeWeights64::new((0..n).map(|_| 10f64.powf(rng.random_range(-1.0..1.0))).collect()).unwrap()
}

/// Twenty graphs with `n` in `[5, 30]`, each with five weight vectors.
pub fn panel() -> Vec<(Graph64, Vec<NodeWeights64>)> {
    let mut r = rng(2024);
    (0..20)
        .map(|_| {
            let n = r.random_range(5..=30);
            let p = r.random_range(0.05..0.5);
            let g = random_connected(&mut r, n, p);
            let ws = (0..5).map(|_| random_weights(&mut r, n)).collect();
            (g, ws)
        })
        .collect()
}

pub fn dense_laplacian(g: &Graph64) -> DMatrix<f64> {
    let n = g.node_count();
    let mut l = DMatrix::zeros(n, n);
    for (i, j, a) in g.edges() {
        l[(i, j)] -= a;
        l[(j, i)] -= a;
        l[(i, i)] += a;
        l[(j, j)] += a;
    }
    l
}

/// `L⁺ = (L + J/n)^{-1} - J/n` for a connected graph.
pub fn laplacian_pinv(g: &Graph64) -> DMatrix<f64> {
    let n = g.node_count();
    let j = DMatrix::from_element(n, n, 1.0 / n as f64);
    (dense_laplacian(g) + &j).try_inverse().unwrap() - j
}

/// Mean hitting times into `target` from the absorbing-chain first-step
/// equations `(d_u / w_u) h_u - sum_v (A_uv / w_u) h_v = 1`, `h_target = 0`.
pub fn first_step_hitting(g: &Graph64, w: &NodeWeights64, target: usize) -> Vec<f64> {
    let n = g.node_count();
    let others: Vec<usize> = (0..n).filter(|&u| u != target).collect();
    let pos = |u: usize| others.iter().position(|&x| x == u);
    let m = others.len();
    let mut a = DMatrix::zeros(m, m);
    let b = nalgebra::DVector::from_element(m, 1.0);
    for (r, &u) in others.iter().enumerate() {
        let wu = w.get(u);
        for (v, auv) in g.neighbors(u) {
            a[(r, r)] += auv / wu;
            if let Some(c) = pos(v) {
                a[(r, c)] -= auv / wu;
            }
        }
    }
    let h = a.lu().solve(&b).unwrap();
    let mut out = vec![0.0; n];
    for (r, &u) in others.iter().enumerate() {
        out[u] = h[r];
    }
    out
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Planted partition with heterogeneous block sizes and degree corrections.
pub struct BlockModel {
    pub graph: Graph64,
    pub blocks: Vec<usize>,
}

pub fn block_model(seed: u64, n: usize, blocks: usize, target_edges: f64, inside: f64) -> BlockModel {
    let mut r = rng(seed);
    // sizes proportional to 1..=2 spread
    let raw: Vec<f64> = (0..blocks).map(|_| r.random_range(1.0..2.5)).collect();
    let total: f64 = raw.iter().sum();
    let mut sizes: Vec<usize> = raw.iter().map(|x| (x / total * n as f64) as usize).collect();
    let short = n - sizes.iter().sum::<usize>();
    for s in sizes.iter_mut().take(short) {
        *s += 1;
    }
    let label: Vec<usize> = sizes.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat_n(b, s)).collect();
    let theta: Vec<f64> = (0..n).map(|_| 0.3 + 2.0 * r.random::<f64>().powi(2)).collect();
    let mean_theta = theta.iter().sum::<f64>() / n as f64;
    let theta: Vec<f64> = theta.iter().map(|t| t / mean_theta).collect();

    let within_pairs: f64 = sizes.iter().map(|&s| (s * (s - 1) / 2) as f64).sum();
    let between_pairs = (n * (n - 1) / 2) as f64 - within_pairs;
    let p_in = inside * target_edges / within_pairs;
    let p_out = (1.0 - inside) * target_edges / between_pairs;

    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = if label[i] == label[j] { p_in } else { p_out };
            if r.random::<f64>() < (p * theta[i] * theta[j]).min(1.0) {
                edges.push((i, j, 1.0));
            }
        }
    }
    let graph = Graph64::from_index_edges(n, &edges).unwrap();
    let (lcc, map) = wspectral::graph::largest_connected_component(&graph);
    let mut kept = vec![0; lcc.node_count()];
    for (old, new) in map.iter().enumerate() {
        if let Some(new) = new {
            kept[*new] = label[old];
        }
    }
    BlockModel { graph: lcc, blocks: kept }
}

/// Adjusted Rand index from the contingency table.
pub fn adjusted_rand(a: &[usize], b: &[usize]) -> f64 {
    assert_eq!(a.len(), b.len());
    let ka = a.iter().max().map_or(0, |m| m + 1);
    let kb = b.iter().max().map_or(0, |m| m + 1);
    let mut table = vec![vec![0u64; kb]; ka];
    for (&x, &y) in a.iter().zip(b) {
        table[x][y] += 1;
    }
    let c2 = |x: u64| (x * x.saturating_sub(1) / 2) as f64;
    let index: f64 = table.iter().flatten().map(|&x| c2(x)).sum();
    let rows: f64 = table.iter().map(|r| c2(r.iter().sum())).sum();
    let cols: f64 = (0..kb).map(|c| c2(table.iter().map(|r| r[c]).sum())).sum();
    let total = c2(a.len() as u64);
    let expected = rows * cols / total;
    let max = (rows + cols) / 2.0;
    if max == expected {
        return 1.0;
    }
    (index - expected) / (max - expected)
}
