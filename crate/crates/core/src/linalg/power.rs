//! Power iterations for the leading singular values and the Perron root.

use serde::Serialize;

use super::{axpy, dot, norm2, scale};
use crate::graph::{DirectedGraph, Orientation};

/// Leading singular values of `A` (equivalently the two largest
/// eigenvalues of the bipartite operator).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralEstimate {
    pub sigma1: f64,
    pub sigma2: f64,
    pub iterations: usize,
    pub converged: bool,
    /// `‖AᵀA v − σ₁² v‖₂` for the final right singular vector estimate.
    pub residual: f64,
    #[serde(skip)]
    pub right_vector: Vec<f64>,
}

/// Perron-root estimate of a nonnegative adjacency matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronEstimate {
    pub rho: f64,
    pub iterations: usize,
    pub converged: bool,
    /// True when `rho` is the conservative upper bound
    /// `min(max out-degree · max weight, σ₁)` rather than a converged estimate.
    pub fallback: bool,
}

fn normal_apply(g: &DirectedGraph, x: &[f64], tmp: &mut [f64], out: &mut [f64]) {
    g.spmv_into(x, tmp, Orientation::Direct);
    g.spmv_into(tmp, out, Orientation::Transposed);
}

/// Largest and second singular value of `A` by power iteration on `AᵀA`.
///
/// `σ₁` starts from the normalized ones vector and stops once successive
/// iterates differ by less than `tol` in the 2-norm. `σ₂` repeats the
/// iteration on the complement of the converged right singular vector.
pub fn power_singular_pair(g: &DirectedGraph, tol: f64, max_iter: usize) -> SpectralEstimate {
    let n = g.n();
    if g.edge_count() == 0 {
        return SpectralEstimate {
            sigma1: 0.0,
            sigma2: 0.0,
            iterations: 0,
            converged: true,
            residual: 0.0,
            right_vector: vec![1.0 / (n as f64).sqrt(); n],
        };
    }
    let mut tmp = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut lambda = 0.0;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        normal_apply(g, &v, &mut tmp, &mut w);
        lambda = dot(&v, &w);
        let norm = norm2(&w);
        if norm == 0.0 {
            break;
        }
        scale(&mut w, 1.0 / norm);
        let change = w.iter().zip(&v).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        std::mem::swap(&mut v, &mut w);
        if change < tol {
            converged = true;
            break;
        }
    }
    normal_apply(g, &v, &mut tmp, &mut w);
    lambda = lambda.max(dot(&v, &w));
    let residual = w.iter().zip(&v).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
    let sigma1 = lambda.max(0.0).sqrt();

    let lambda2 = deflated_power(g, &v, lambda, tol, max_iter);
    SpectralEstimate {
        sigma1,
        sigma2: lambda2.max(0.0).sqrt().min(sigma1),
        iterations,
        converged,
        residual,
        right_vector: v,
    }
}

fn deflated_power(g: &DirectedGraph, v1: &[f64], lambda1: f64, tol: f64, max_iter: usize) -> f64 {
    let n = g.n();
    if n < 2 {
        return 0.0;
    }
    let project = |x: &mut Vec<f64>| {
        let h = dot(v1, x);
        axpy(-h, v1, x);
    };
    // A structured start such as the ones vector can miss a second copy of
    // a repeated leading singular value, so use a generic deterministic one.
    let mut u: Vec<f64> = (0..n).map(|i| ((i as f64 + 1.0) * 0.618_033_988_749_895).fract() + 0.25).collect();
    project(&mut u);
    if norm2(&u) == 0.0 {
        return 0.0;
    }
    let nu = norm2(&u);
    scale(&mut u, 1.0 / nu);
    let mut tmp = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut lambda = 0.0;
    for _ in 0..max_iter {
        normal_apply(g, &u, &mut tmp, &mut w);
        project(&mut w);
        let rayleigh = dot(&u, &w);
        let norm = norm2(&w);
        if norm <= 1e-14 * lambda1 {
            return rayleigh.max(0.0);
        }
        scale(&mut w, 1.0 / norm);
        project(&mut w);
        let change = w.iter().zip(&u).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        std::mem::swap(&mut u, &mut w);
        let settled = (rayleigh - lambda).abs() <= 1e-15 * lambda1;
        lambda = rayleigh;
        if change < tol || settled {
            break;
        }
    }
    lambda
}

/// Perron root `ρ(A)` by power iteration on `A + I` with 1-norm
/// normalization; the unit shift removes the oscillation that periodic
/// graphs cause in the plain iteration.
pub fn spectral_radius(g: &DirectedGraph, tol: f64, max_iter: usize) -> PerronEstimate {
    let n = g.n();
    if g.edge_count() == 0 {
        return PerronEstimate { rho: 0.0, iterations: 0, converged: true, fallback: false };
    }
    let mut x = vec![1.0 / n as f64; n];
    let mut y = vec![0.0; n];
    let mut estimate = f64::NAN;
    for it in 1..=max_iter {
        g.spmv_into(&x, &mut y, Orientation::Direct);
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi += xi;
        }
        let mass: f64 = y.iter().sum();
        scale(&mut y, 1.0 / mass);
        let change: f64 = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        let next = mass - 1.0;
        let settled = (next - estimate).abs() <= tol * next.abs().max(1.0);
        estimate = next;
        std::mem::swap(&mut x, &mut y);
        if change < tol && settled {
            return PerronEstimate { rho: estimate.max(0.0), iterations: it, converged: true, fallback: false };
        }
    }
    let degree_bound = g.out_degrees().into_iter().max().unwrap_or(0) as f64 * g.max_weight();
    let sigma1 = power_singular_pair(g, 1e-12, max_iter.max(1000)).sigma1;
    PerronEstimate {
        rho: degree_bound.min(sigma1 * (1.0 + 1e-12)),
        iterations: max_iter,
        converged: false,
        fallback: true,
    }
}
