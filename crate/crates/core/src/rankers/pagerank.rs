//! PageRank and Reverse PageRank by power iteration.

use super::{Diagnostics, MethodInfo, ScoreVector, Side};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

#[derive(Debug, Clone, PartialEq)]
pub struct PageRankOptions {
    pub alpha: f64,
    /// Stop once successive iterates differ by less than this in the 1-norm.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankOptions {
    fn default() -> Self {
        PageRankOptions { alpha: 0.85, tol: 1e-12, max_iter: 1000 }
    }
}

/// Stationary vector of `α P̄ + (1 − α) 𝟙𝟙ᵀ/n`, where `P̄` is the
/// row-normalized adjacency matrix with dangling rows replaced by `𝟙ᵀ/n`.
///
/// With `reverse` the edges are reversed first, which turns the scores into
/// hub scores. A missed tolerance returns the last iterate with
/// `converged = false`.
pub fn pagerank(g: &DirectedGraph, opts: &PageRankOptions, reverse: bool) -> Result<ScoreVector> {
    if !(opts.alpha > 0.0 && opts.alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("damping factor {} must lie in (0, 1)", opts.alpha)));
    }
    if !(opts.tol > 0.0) || opts.max_iter == 0 {
        return Err(Error::InvalidParameter("PageRank needs tol > 0 and max_iter ≥ 1".into()));
    }
    let reversed;
    let g = if reverse {
        reversed = g.reversed();
        &reversed
    } else {
        g
    };
    let n = g.n();
    let inv_n = 1.0 / n as f64;
    let strength: Vec<f64> = (0..n).map(|i| g.out_strength(i)).collect();
    let weighted = g.is_weighted();
    let mut x = vec![inv_n; n];
    let mut next = vec![0.0; n];
    let mut converged = false;
    let mut iterations = 0;
    let mut change = f64::INFINITY;
    while iterations < opts.max_iter {
        iterations += 1;
        let mut dangling = 0.0;
        next.iter_mut().for_each(|v| *v = 0.0);
        for (i, (&xi, &si)) in x.iter().zip(&strength).enumerate() {
            if si == 0.0 {
                dangling += xi;
            } else if !weighted {
                let share = xi / si;
                for &j in g.out_neighbors(i) {
                    next[j] += share;
                }
            }
        }
        if weighted {
            for (i, j, w) in g.edges() {
                next[j] += x[i] / strength[i] * w;
            }
        }
        let teleport = (opts.alpha * dangling + (1.0 - opts.alpha)) * inv_n;
        for v in next.iter_mut() {
            *v = opts.alpha * *v + teleport;
        }
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|v| *v /= total);
        change = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if change < opts.tol {
            converged = true;
            break;
        }
    }
    let total: f64 = x.iter().sum();
    x.iter_mut().for_each(|v| *v /= total);
    let info = MethodInfo::new(if reverse { "reverse-pagerank" } else { "pagerank" })
        .with("alpha", opts.alpha)
        .with("tol", opts.tol);
    let side = if reverse { Side::Hub } else { Side::Authority };
    let diagnostics = Diagnostics { iterations, converged, residual: Some(change), ..Default::default() };
    ScoreVector::new(info, side, x, diagnostics)
}
