//! Symmetric Lanczos with full reorthogonalization.
//!
//! The state is kept between calls so the Jacobi matrix can be grown one
//! step at a time, which the bound refinement in `quadrature` and `topk`
//! relies on.

use std::ops::Range;

use super::tridiag::JacobiMatrix;
use super::{axpy, dot, norm2, scale, SymmetricOperator};

fn support(v: &[f64]) -> Range<usize> {
    match v.iter().position(|&x| x != 0.0) {
        Some(lo) => lo..v.iter().rposition(|&x| x != 0.0).unwrap() + 1,
        None => 0..0,
    }
}

fn overlap(a: &Range<usize>, b: &Range<usize>) -> Range<usize> {
    a.start.max(b.start)..a.end.min(b.end).max(a.start.max(b.start))
}

fn hull(a: &Range<usize>, b: &Range<usize>) -> Range<usize> {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    a.start.min(b.start)..a.end.max(b.end)
}

/// Incremental Lanczos process on a symmetric operator.
pub struct Lanczos<'a, O: SymmetricOperator + ?Sized> {
    op: &'a O,
    basis: Vec<Vec<f64>>,
    /// Index range outside of which each basis vector is exactly zero.
    support: Vec<Range<usize>>,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    breakdown: bool,
    breakdown_tol: f64,
}

impl<'a, O: SymmetricOperator + ?Sized> Lanczos<'a, O> {
    /// Starts from `start / ‖start‖`. A zero start vector yields an
    /// immediately broken-down process of order 0.
    pub fn new(op: &'a O, start: &[f64], breakdown_tol: f64) -> Self {
        assert_eq!(start.len(), op.dim());
        let norm = norm2(start);
        let mut lanczos = Lanczos {
            op,
            basis: Vec::new(),
            support: Vec::new(),
            alpha: Vec::new(),
            beta: Vec::new(),
            breakdown: norm == 0.0,
            breakdown_tol,
        };
        if norm > 0.0 {
            let mut q = start.to_vec();
            scale(&mut q, 1.0 / norm);
            lanczos.support.push(support(&q));
            lanczos.basis.push(q);
        }
        lanczos
    }

    /// Starts from the unit vector `e_node`.
    pub fn from_node(op: &'a O, node: usize, breakdown_tol: f64) -> Self {
        let mut start = vec![0.0; op.dim()];
        start[node] = 1.0;
        Self::new(op, &start, breakdown_tol)
    }

    /// Performs one step. Returns false once the process has broken down.
    pub fn step(&mut self) -> bool {
        if self.breakdown {
            return false;
        }
        let k = self.alpha.len();
        let dim = self.op.dim();
        let mut w = vec![0.0; dim];
        self.op.apply(&self.basis[k], &mut w);
        // Products over index ranges where either vector is known to vanish
        // are exactly zero and are skipped.
        let mut w_support = support(&w);
        let subtract = |h: f64, j: usize, w: &mut [f64], w_support: &mut Range<usize>| {
            let r = self.support[j].clone();
            axpy(h, &self.basis[j][r.clone()], &mut w[r.clone()]);
            *w_support = hull(w_support, &r);
        };
        if k > 0 {
            subtract(-self.beta[k - 1], k - 1, &mut w, &mut w_support);
        }
        let r = overlap(&self.support[k], &w_support);
        let a = dot(&self.basis[k][r.clone()], &w[r]);
        if a != 0.0 {
            subtract(-a, k, &mut w, &mut w_support);
        }
        // Two passes of Gram-Schmidt against the whole basis.
        for _ in 0..2 {
            for j in 0..self.basis.len() {
                let r = overlap(&self.support[j], &w_support);
                if r.is_empty() {
                    continue;
                }
                let h = dot(&self.basis[j][r.clone()], &w[r]);
                if h != 0.0 {
                    subtract(-h, j, &mut w, &mut w_support);
                }
            }
        }
        self.alpha.push(a);
        let b = norm2(&w);
        if b <= self.breakdown_tol || self.basis.len() == dim {
            self.breakdown = true;
        } else {
            self.beta.push(b);
            scale(&mut w, 1.0 / b);
            self.support.push(support(&w));
            self.basis.push(w);
        }
        true
    }

    /// Advances until the order reaches `p` or the process breaks down.
    pub fn run_to(&mut self, p: usize) {
        while self.order() < p && self.step() {}
    }

    /// Number of completed steps, i.e. the order of the Jacobi matrix.
    pub fn order(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_breakdown(&self) -> bool {
        self.breakdown
    }

    /// The Jacobi matrix of the completed steps. Panics before the first step.
    pub fn jacobi(&self) -> JacobiMatrix {
        let p = self.order();
        assert!(p >= 1, "no Lanczos step has been taken");
        JacobiMatrix::new_unchecked(self.alpha.clone(), self.beta[..p - 1].to_vec())
    }

    /// `β_p`, the coupling to the next Lanczos vector, unless the process
    /// has broken down at the current order.
    pub fn coupling(&self) -> Option<f64> {
        let p = self.order();
        (p >= 1 && self.beta.len() >= p).then(|| self.beta[p - 1])
    }

    /// Orthonormal Lanczos vectors computed so far.
    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }
}

/// Runs `p_max` Lanczos steps from `e_start_node` and returns the Jacobi
/// matrix together with the breakdown flag.
pub fn lanczos<O: SymmetricOperator + ?Sized>(
    op: &O,
    start_node: usize,
    p_max: usize,
    breakdown_tol: f64,
) -> (JacobiMatrix, bool) {
    assert!(start_node < op.dim() && p_max >= 1);
    let mut process = Lanczos::from_node(op, start_node, breakdown_tol);
    process.run_to(p_max);
    (process.jacobi(), process.is_breakdown())
}
