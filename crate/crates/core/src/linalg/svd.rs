//! Leading singular triplets of a sparse adjacency matrix from Lanczos on
//! `AᵀA` with full reorthogonalization.
//!
//! When the Krylov space is exhausted the process is restarted from the
//! first unit vector not yet spanned, so repeated singular values are found
//! once enough steps are taken. With `n` steps the decomposition is complete.

use super::tridiag::{symmetric_tridiagonal_eigen, EigenvectorRows};
use super::{axpy, dot, norm2, scale};
use crate::error::Result;
use crate::graph::{DirectedGraph, Orientation};

/// Singular triplets `(σ_i, u_i, v_i)` in descending order of `σ_i`.
#[derive(Debug, Clone)]
pub struct SingularTriplets {
    pub values: Vec<f64>,
    /// Left singular vectors; `None` for numerically zero `σ_i`.
    pub left: Vec<Option<Vec<f64>>>,
    pub right: Vec<Vec<f64>>,
    /// True when the Krylov basis spans all of `R^n`.
    pub complete: bool,
}

struct NormalLanczos<'g> {
    g: &'g DirectedGraph,
    basis: Vec<Vec<f64>>,
    diag: Vec<f64>,
    off: Vec<f64>,
    // coupling from the last basis vector to the next one; 0 after breakdown
    tail: f64,
    pending: Option<Vec<f64>>,
    next_unit: usize,
    tmp: Vec<f64>,
}

impl<'g> NormalLanczos<'g> {
    fn new(g: &'g DirectedGraph) -> Self {
        let n = g.n();
        NormalLanczos {
            g,
            basis: Vec::new(),
            diag: Vec::new(),
            off: Vec::new(),
            tail: 0.0,
            pending: Some(vec![1.0 / (n as f64).sqrt(); n]),
            next_unit: 0,
            tmp: vec![0.0; n],
        }
    }

    fn orthogonalize(&self, w: &mut [f64]) {
        for _ in 0..2 {
            for q in &self.basis {
                let h = dot(q, w);
                axpy(-h, q, w);
            }
        }
    }

    /// Finds a fresh unit start vector orthogonal to the current basis.
    fn restart_vector(&mut self) -> Option<Vec<f64>> {
        let n = self.g.n();
        while self.next_unit < n {
            let mut e = vec![0.0; n];
            e[self.next_unit] = 1.0;
            self.next_unit += 1;
            self.orthogonalize(&mut e);
            let norm = norm2(&e);
            if norm > 0.5 {
                scale(&mut e, 1.0 / norm);
                return Some(e);
            }
        }
        None
    }

    fn extend_to(&mut self, m: usize, scale_hint: f64) {
        let n = self.g.n();
        let tol = 1e-12 * scale_hint.max(f64::MIN_POSITIVE);
        while self.basis.len() < m.min(n) {
            let (q, coupling) = match self.pending.take() {
                Some(q) => (q, self.tail),
                None => match self.restart_vector() {
                    Some(q) => (q, 0.0),
                    None => break,
                },
            };
            if !self.basis.is_empty() {
                self.off.push(coupling);
            }
            let k = self.basis.len();
            self.basis.push(q);
            let mut w = vec![0.0; n];
            self.g.spmv_into(&self.basis[k], &mut self.tmp, Orientation::Direct);
            self.g.spmv_into(&self.tmp, &mut w, Orientation::Transposed);
            let a = dot(&self.basis[k], &w);
            self.orthogonalize(&mut w);
            self.diag.push(a);
            let b = norm2(&w);
            if b > tol && self.basis.len() < n {
                scale(&mut w, 1.0 / b);
                self.pending = Some(w);
                self.tail = b;
            } else {
                self.tail = 0.0;
            }
        }
    }
}

/// Leading `k` singular triplets of `A`.
///
/// Runs at least `max(2k + 20, 40)` steps (capped at `n`) and doubles the
/// step count until the `k` leading Ritz pairs have residual below
/// `tol · θ_max`, or the whole space has been spanned.
pub fn top_singular_triplets(g: &DirectedGraph, k: usize, tol: f64) -> Result<SingularTriplets> {
    let n = g.n();
    let k = k.min(n);
    let scale_hint = (0..n).map(|i| g.out_strength(i) * g.in_strength(i)).fold(1.0, f64::max);
    let mut process = NormalLanczos::new(g);
    let mut m = (2 * k + 20).max(40).min(n);
    loop {
        process.extend_to(m, scale_hint);
        let steps = process.basis.len();
        let (values, rows) = symmetric_tridiagonal_eigen(&process.diag, &process.off, EigenvectorRows::All)?;
        let complete = steps == n;
        let theta_max = values.iter().copied().fold(0.0, f64::max);
        let order: Vec<usize> = (0..steps).rev().collect();
        let converged = complete
            || order
                .iter()
                .take(k)
                .all(|&j| (process.tail * rows[steps - 1][j]).abs() <= tol * theta_max.max(f64::MIN_POSITIVE));
        if converged || m >= n {
            return Ok(assemble(g, &process.basis, &values, &rows, &order[..k.min(steps)], theta_max, complete));
        }
        m = (2 * m).min(n);
    }
}

fn assemble(
    g: &DirectedGraph,
    basis: &[Vec<f64>],
    values: &[f64],
    rows: &[Vec<f64>],
    order: &[usize],
    theta_max: f64,
    complete: bool,
) -> SingularTriplets {
    let n = g.n();
    let mut out = SingularTriplets { values: Vec::new(), left: Vec::new(), right: Vec::new(), complete };
    for &j in order {
        let mut v = vec![0.0; n];
        for (q, row) in basis.iter().zip(rows) {
            axpy(row[j], q, &mut v);
        }
        let nv = norm2(&v);
        scale(&mut v, 1.0 / nv);
        let theta = values[j].max(0.0);
        let zero = theta <= 1e-12 * theta_max;
        let sigma = if zero { 0.0 } else { theta.sqrt() };
        let left = (!zero).then(|| {
            let mut u = vec![0.0; n];
            g.spmv_into(&v, &mut u, Orientation::Direct);
            let nu = norm2(&u);
            scale(&mut u, 1.0 / nu);
            u
        });
        out.values.push(sigma);
        out.left.push(left);
        out.right.push(v);
    }
    out
}
