//! Independent dense oracles and the seeded random digraph suite shared by
//! the integration tests.
#![allow(dead_code)]

use hubauth::DirectedGraph;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SUITE_SIZE: usize = 50;
pub const SUITE_SEED: u64 = 0x5eed_2009;

/// Erdős–Rényi digraph without self-loops; resampled until it has an edge.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> DirectedGraph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        if !edges.is_empty() {
            return DirectedGraph::from_edges(n, edges).unwrap();
        }
    }
}

/// Fifty digraphs with `n ≤ 40` and edge probability in `[0.1, 0.5]`.
pub fn random_suite() -> Vec<DirectedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    (0..SUITE_SIZE)
        .map(|_| {
            let n = rng.gen_range(2..=40);
            let p = rng.gen_range(0.1..=0.5);
            random_digraph(&mut rng, n, p)
        })
        .collect()
}

/// Random digraphs where roughly a fifth of the nodes have no out-links.
pub fn dangling_suite(count: usize, seed: u64) -> Vec<DirectedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(3..=40);
            let p = rng.gen_range(0.1..=0.4);
            let dangling: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.2)).collect();
            let mut edges = Vec::new();
            for (u, &silent) in dangling.iter().enumerate() {
                for v in 0..n {
                    if u != v && !silent && rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            DirectedGraph::from_edges(n, edges).unwrap()
        })
        .collect()
}

pub fn bipartite_dense(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, n), (n, n)).copy_from(a);
    m.view_mut((n, 0), (n, n)).copy_from(&a.transpose());
    m
}

/// `e^M` for symmetric `M` through its eigendecomposition.
pub fn expm_symmetric(m: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = m.clone().symmetric_eigen();
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(f64::exp));
    &eig.eigenvectors * d * eig.eigenvectors.transpose()
}

/// Hub and authority scores: diagonal of the bipartite exponential.
pub fn exp_scores(g: &DirectedGraph) -> (Vec<f64>, Vec<f64>) {
    let n = g.n();
    let e = expm_symmetric(&bipartite_dense(&g.to_dense()));
    ((0..n).map(|i| e[(i, i)]).collect(), (0..n).map(|i| e[(n + i, n + i)]).collect())
}

/// Blocks of `e^𝒜` written through the SVD `A = UΣVᵀ`:
/// `(U cosh Σ Uᵀ, V cosh Σ Vᵀ, U sinh Σ Vᵀ)`.
pub fn svd_blocks(a: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>, Vec<f64>) {
    let svd = a.clone().svd(true, true);
    let u = svd.u.unwrap();
    let vt = svd.v_t.unwrap();
    let s = &svd.singular_values;
    let cosh = DMatrix::from_diagonal(&s.map(f64::cosh));
    let sinh = DMatrix::from_diagonal(&s.map(f64::sinh));
    let hub = &u * &cosh * u.transpose();
    let auth = vt.transpose() * &cosh * &vt;
    let off = &u * sinh * &vt;
    (hub, auth, off, s.iter().copied().collect())
}

/// Stationary vector of the Google matrix by a direct linear solve.
pub fn pagerank_dense(g: &DirectedGraph, alpha: f64, reverse: bool) -> Vec<f64> {
    let n = g.n();
    let mut a = g.to_dense();
    if reverse {
        a = a.transpose();
    }
    // Row-stochastic transition matrix with uniform rows for dangling nodes.
    let mut p = DMatrix::zeros(n, n);
    for i in 0..n {
        let s: f64 = a.row(i).sum();
        for j in 0..n {
            p[(i, j)] = if s > 0.0 { a[(i, j)] / s } else { 1.0 / n as f64 };
        }
    }
    let m = DMatrix::identity(n, n) - p.transpose() * alpha;
    let rhs = DVector::from_element(n, (1.0 - alpha) / n as f64);
    let x = m.lu().solve(&rhs).unwrap();
    let total = x.sum();
    x.iter().map(|v| v / total).collect()
}

pub fn katz_dense(g: &DirectedGraph, c: f64, transpose: bool) -> Vec<f64> {
    let n = g.n();
    let mut a = g.to_dense();
    if transpose {
        a = a.transpose();
    }
    let m = DMatrix::identity(n, n) - a * c;
    m.lu().solve(&DVector::from_element(n, 1.0)).unwrap().iter().copied().collect()
}

/// Diagonal of `(I − c²AAᵀ)⁻¹` by a dense LU inverse.
pub fn resolvent_dense(g: &DirectedGraph, c: f64, transpose: bool) -> Vec<f64> {
    let n = g.n();
    let mut a = g.to_dense();
    if transpose {
        a = a.transpose();
    }
    let m = DMatrix::identity(n, n) - &a * a.transpose() * (c * c);
    let inv = m.try_inverse().unwrap();
    (0..n).map(|i| inv[(i, i)]).collect()
}

pub fn largest_singular_values(g: &DirectedGraph) -> Vec<f64> {
    let mut s: Vec<f64> = g.to_dense().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn max_rel_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(1.0)).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
