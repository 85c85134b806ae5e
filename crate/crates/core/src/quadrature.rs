//! Gauss, Gauss-Radau and Gauss-Lobatto rules for `e_iᵀ f(M) e_i` and
//! bilinear forms of a symmetric operator, with `f` the exponential or a
//! resolvent.
//!
//! Both functions have strictly positive derivatives of every order on the
//! admissible spectrum, which fixes the bound directions: Gauss and Radau
//! with the node prescribed at the left end give lower bounds, Radau with
//! the node at the right end and Lobatto give upper bounds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::linalg::power::power_singular_pair;
use crate::linalg::{JacobiMatrix, Lanczos, SymmetricOperator};

/// Relative padding applied to the estimated largest singular value.
const SIGMA_PADDING: f64 = 0.01;

/// Scalar function whose matrix version is being bounded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatrixFunction {
    Exp,
    /// `1 / (1 − c·λ)`, defined for `λ < 1/c`.
    Resolvent {
        c: f64,
    },
}

impl MatrixFunction {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            MatrixFunction::Exp => x.exp(),
            MatrixFunction::Resolvent { c } => 1.0 / (1.0 - c * x),
        }
    }

    /// Rejects node sets that reach the pole of the resolvent.
    fn check_nodes(self, nodes: &[f64]) -> Result<()> {
        if let MatrixFunction::Resolvent { c } = self {
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::InvalidParameter(format!("resolvent parameter c = {c} must be positive")));
            }
            let top = nodes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if c * top >= 1.0 {
                return Err(Error::InvalidParameter(format!(
                    "resolvent pole 1/c = {} lies inside the quadrature nodes (max {top})",
                    1.0 / c
                )));
            }
        }
        Ok(())
    }
}

/// An interval `[lower, upper]` containing the spectrum of the operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumInterval {
    pub lower: f64,
    pub upper: f64,
}

impl SpectrumInterval {
    /// `[-b, b]`, the shape every bipartite spectrum has.
    pub fn symmetric(b: f64) -> Self {
        SpectrumInterval { lower: -b, upper: b }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Spectral enclosure of the bipartite operator of `g`:
/// `b = min((1 + 0.01)·σ̂₁, Gershgorin bound)`, `a = −b`.
///
/// The padded singular-value estimate is only used when its power
/// iteration converged; otherwise the Gershgorin bound stands alone.
pub fn spectrum_interval(g: &DirectedGraph) -> SpectrumInterval {
    let gershgorin = g.bipartite().gershgorin_bound();
    let est = power_singular_pair(g, 1e-12, 20_000);
    let b = if est.converged { ((1.0 + SIGMA_PADDING) * est.sigma1).min(gershgorin) } else { gershgorin };
    SpectrumInterval::symmetric(b)
}

/// Certified bracket for one diagonal entry of `f(M)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NodeBounds {
    pub node: usize,
    pub lower: f64,
    pub upper: f64,
    /// Lanczos steps used.
    pub p: usize,
    /// Lanczos broke down, so the Gauss rule is exact.
    pub exact: bool,
}

impl NodeBounds {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// `width ≤ rtol · max(1, |lower|)`.
    pub fn is_resolved(&self, rtol: f64) -> bool {
        self.exact || self.width() <= rtol * self.lower.abs().max(1.0)
    }
}

/// `e_1ᵀ f(J) e_1 = Σ_j w_j f(t_j)` from the eigen-decomposition of `J`.
pub fn gauss_estimate(j: &JacobiMatrix, f: MatrixFunction) -> Result<f64> {
    let eig = j.eigen()?;
    f.check_nodes(&eig.nodes)?;
    Ok(eig.weights.iter().zip(&eig.nodes).map(|(w, &t)| w * f.eval(t)).sum())
}

/// Jacobi matrix of order `p + 1` that has `tau` as an eigenvalue:
/// solve `(J − τI) δ = β_p² e_p` and append `ω = τ + δ_p`.
fn radau_matrix(j: &JacobiMatrix, coupling: f64, tau: f64) -> Result<JacobiMatrix> {
    let p = j.order();
    let mut rhs = vec![0.0; p];
    rhs[p - 1] = coupling * coupling;
    let delta = j.shifted_solve(tau, &rhs)?;
    Ok(j.extended(coupling, tau + delta[p - 1]))
}

/// Jacobi matrix of order `p + 1` with both `a` and `b` as eigenvalues.
fn lobatto_matrix(j: &JacobiMatrix, a: f64, b: f64) -> Result<JacobiMatrix> {
    let p = j.order();
    let mut unit = vec![0.0; p];
    unit[p - 1] = 1.0;
    let delta = j.shifted_solve(a, &unit)?[p - 1];
    let mu = j.shifted_solve(b, &unit)?[p - 1];
    let coupling_sq = (b - a) / (delta - mu);
    if !(coupling_sq > 0.0 && coupling_sq.is_finite()) {
        return Err(Error::Numerical("Lobatto modification produced a non-positive coupling".into()));
    }
    Ok(j.extended(coupling_sq.sqrt(), a + delta * coupling_sq))
}

/// Evaluates a prescribed-node rule; on a collision with a Ritz value the
/// node is moved outward by `1e-8·(b − a)` once.
fn with_outward_retry(
    interval: SpectrumInterval,
    rule: impl Fn(SpectrumInterval) -> Result<JacobiMatrix>,
) -> Result<JacobiMatrix> {
    match rule(interval) {
        Ok(j) => Ok(j),
        Err(Error::Numerical(_)) => {
            let shift = 1e-8 * interval.width().max(f64::MIN_POSITIVE);
            rule(SpectrumInterval { lower: interval.lower - shift, upper: interval.upper + shift })
        }
        Err(e) => Err(e),
    }
}

/// Default breakdown threshold `1e-12 · b` for an operator whose spectrum
/// lies in `[-b, b]`.
pub fn breakdown_tolerance(interval: SpectrumInterval) -> f64 {
    1e-12 * interval.upper.abs().max(interval.lower.abs())
}

/// Lanczos state for one start node, extended on demand.
pub struct QuadratureProbe<'a, O: SymmetricOperator + ?Sized> {
    node: usize,
    interval: SpectrumInterval,
    f: MatrixFunction,
    lanczos: Lanczos<'a, O>,
}

impl<'a, O: SymmetricOperator + ?Sized> QuadratureProbe<'a, O> {
    pub fn new(op: &'a O, node: usize, interval: SpectrumInterval, f: MatrixFunction) -> Self {
        assert!(node < op.dim());
        QuadratureProbe { node, interval, f, lanczos: Lanczos::from_node(op, node, breakdown_tolerance(interval)) }
    }

    pub fn node(&self) -> usize {
        self.node
    }

    /// Gauss-Radau bracket after `p` Lanczos steps (fewer on breakdown).
    pub fn bounds(&mut self, p: usize) -> Result<NodeBounds> {
        assert!(p >= 1);
        self.lanczos.run_to(p);
        let j = self.lanczos.jacobi();
        let steps = j.order();
        match self.lanczos.coupling() {
            None => {
                let value = gauss_estimate(&j, self.f)?;
                Ok(NodeBounds { node: self.node, lower: value, upper: value, p: steps, exact: true })
            }
            Some(coupling) => {
                let left = with_outward_retry(self.interval, |iv| radau_matrix(&j, coupling, iv.lower))?;
                let right = with_outward_retry(self.interval, |iv| radau_matrix(&j, coupling, iv.upper))?;
                let lower = gauss_estimate(&left, self.f)?;
                let upper = gauss_estimate(&right, self.f)?;
                Ok(NodeBounds {
                    node: self.node,
                    lower: lower.min(upper),
                    upper: upper.max(lower),
                    p: steps,
                    exact: false,
                })
            }
        }
    }

    /// Plain Gauss rule after `p` steps; a lower bound for both functions.
    pub fn gauss(&mut self, p: usize) -> Result<f64> {
        self.lanczos.run_to(p);
        gauss_estimate(&self.lanczos.jacobi(), self.f)
    }

    /// Gauss-Lobatto value after `p` steps; an upper bound.
    pub fn lobatto(&mut self, p: usize) -> Result<f64> {
        self.lanczos.run_to(p);
        let j = self.lanczos.jacobi();
        if self.lanczos.coupling().is_none() {
            return gauss_estimate(&j, self.f);
        }
        let extended = with_outward_retry(self.interval, |iv| lobatto_matrix(&j, iv.lower, iv.upper))?;
        gauss_estimate(&extended, self.f)
    }
}

/// Gauss-Radau bracket for `e_nodeᵀ f(op) e_node` after `p` Lanczos steps.
pub fn radau_bounds<O: SymmetricOperator + ?Sized>(
    op: &O,
    node: usize,
    p: usize,
    interval: SpectrumInterval,
    f: MatrixFunction,
) -> Result<NodeBounds> {
    QuadratureProbe::new(op, node, interval, f).bounds(p)
}

/// Gauss-Lobatto upper bound for `e_nodeᵀ f(op) e_node`.
pub fn lobatto_bound<O: SymmetricOperator + ?Sized>(
    op: &O,
    node: usize,
    p: usize,
    interval: SpectrumInterval,
    f: MatrixFunction,
) -> Result<f64> {
    QuadratureProbe::new(op, node, interval, f).lobatto(p)
}

/// Gauss estimate of `wᵀ f(op) w` for an arbitrary nonzero `w`.
fn quadratic_form<O: SymmetricOperator + ?Sized>(
    op: &O,
    w: &[f64],
    p: usize,
    f: MatrixFunction,
    breakdown_tol: f64,
) -> Result<f64> {
    let norm_sq: f64 = w.iter().map(|x| x * x).sum();
    let mut lanczos = Lanczos::new(op, w, breakdown_tol);
    lanczos.run_to(p);
    Ok(norm_sq * gauss_estimate(&lanczos.jacobi(), f)?)
}

/// Estimate of `e_uᵀ f(op) e_v` by polarization,
/// `¼[q(e_u + e_v) − q(e_u − e_v)]` with `q(w) = wᵀ f(op) w`.
///
/// The estimate is exact once both Lanczos runs break down.
pub fn bilinear_estimate<O: SymmetricOperator + ?Sized>(
    op: &O,
    u: usize,
    v: usize,
    p: usize,
    f: MatrixFunction,
    breakdown_tol: f64,
) -> Result<f64> {
    let dim = op.dim();
    if u == v || u >= dim || v >= dim {
        return Err(Error::InvalidParameter(format!(
            "bilinear form needs distinct nodes below {dim}, got {u} and {v}"
        )));
    }
    if p == 0 {
        return Err(Error::InvalidParameter("at least one Lanczos step is required".into()));
    }
    let mut plus = vec![0.0; dim];
    plus[u] = 1.0;
    plus[v] = 1.0;
    let mut minus = vec![0.0; dim];
    minus[u] = 1.0;
    minus[v] = -1.0;
    let q_plus = quadratic_form(op, &plus, p, f, breakdown_tol)?;
    let q_minus = quadratic_form(op, &minus, p, f, breakdown_tol)?;
    Ok(0.25 * (q_plus - q_minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dense_expm;
    use crate::samples;
    use nalgebra::DMatrix;

    #[test]
    fn interval_of_two_cycle_uses_gershgorin() {
        let iv = spectrum_interval(&samples::two_cycle());
        assert_eq!(iv.upper, 1.0);
        assert_eq!(iv.lower, -1.0);
    }

    #[test]
    fn interval_of_example_three_uses_padded_sigma() {
        let iv = spectrum_interval(&samples::example3());
        assert!((iv.upper - 2.02).abs() < 1e-10);
    }

    #[test]
    fn interval_of_path_contains_spectrum() {
        let g = samples::directed_path(5);
        let iv = spectrum_interval(&g);
        assert!(iv.upper <= 2.0);
        for l in g.bipartite().to_dense().symmetric_eigen().eigenvalues.iter() {
            assert!(*l >= iv.lower - 1e-12 && *l <= iv.upper + 1e-12);
        }
    }

    #[test]
    fn gauss_estimates() {
        let j = JacobiMatrix::new(vec![2.0], vec![]).unwrap();
        assert!((gauss_estimate(&j, MatrixFunction::Exp).unwrap() - 2f64.exp()).abs() < 1e-14);
        let j = JacobiMatrix::new(vec![0.0, 0.0], vec![1.0]).unwrap();
        assert!((gauss_estimate(&j, MatrixFunction::Exp).unwrap() - 1f64.cosh()).abs() < 1e-15);
        assert!(gauss_estimate(&j, MatrixFunction::Resolvent { c: 1.5 }).is_err());
    }

    #[test]
    fn gauss_is_below_dense_truth() {
        let g = samples::example1();
        let op = g.bipartite();
        let iv = spectrum_interval(&g);
        let truth = dense_expm(&op.to_dense()).unwrap()[(0, 0)];
        let mut probe = QuadratureProbe::new(&op, 0, iv, MatrixFunction::Exp);
        assert!(probe.gauss(3).unwrap() <= truth);
    }

    #[test]
    fn example_three_hub_six_is_exact() {
        let g = samples::example3();
        let op = g.bipartite();
        let b = radau_bounds(&op, 5, 3, spectrum_interval(&g), MatrixFunction::Exp).unwrap();
        assert!(b.exact);
        assert_eq!(b.p, 2);
        assert!((b.lower - 2f64.cosh()).abs() < 1e-14);
        assert_eq!(b.lower, b.upper);
    }

    #[test]
    fn edgeless_nodes_are_one() {
        let g = samples::edgeless(3);
        let op = g.bipartite();
        for node in 0..6 {
            let b = radau_bounds(&op, node, 3, spectrum_interval(&g), MatrixFunction::Exp).unwrap();
            assert!(b.exact);
            assert_eq!((b.lower, b.upper), (1.0, 1.0));
        }
    }

    #[test]
    fn brackets_tighten_around_dense_value() {
        let g = samples::example1();
        let op = g.bipartite();
        let iv = spectrum_interval(&g);
        let truth = dense_expm(&op.to_dense()).unwrap()[(0, 0)];
        let mut probe = QuadratureProbe::new(&op, 0, iv, MatrixFunction::Exp);
        let mut last_width = f64::INFINITY;
        for p in 2..=4 {
            let b = probe.bounds(p).unwrap();
            assert!(b.lower <= truth + 1e-12 && truth <= b.upper + 1e-12);
            assert!(b.width() < last_width);
            last_width = b.width();
        }
    }

    #[test]
    fn lobatto_is_an_upper_bound() {
        let g = samples::example1();
        let op = g.bipartite();
        let iv = spectrum_interval(&g);
        let truth = dense_expm(&op.to_dense()).unwrap()[(0, 0)];
        assert!(lobatto_bound(&op, 0, 4, iv, MatrixFunction::Exp).unwrap() >= truth - 1e-12);
        let one = DMatrix::from_element(1, 1, 0.0);
        let v = lobatto_bound(&one, 0, 1, SpectrumInterval::symmetric(1.0), MatrixFunction::Exp).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn bilinear_matches_dense() {
        let g = samples::example1();
        let op = g.bipartite();
        let e = dense_expm(&op.to_dense()).unwrap();
        let est = bilinear_estimate(&op, 0, 1, 10, MatrixFunction::Exp, 1e-12).unwrap();
        assert!((est - e[(0, 1)]).abs() < 1e-8);
        let hub_auth = bilinear_estimate(&op, 0, 4 + 2, 10, MatrixFunction::Exp, 1e-12).unwrap();
        assert!((hub_auth - e[(0, 6)]).abs() < 1e-8);
    }

    #[test]
    fn bilinear_disconnected_is_zero() {
        let g = samples::edgeless(2);
        let op = g.bipartite();
        assert_eq!(bilinear_estimate(&op, 0, 1, 4, MatrixFunction::Exp, 1e-12).unwrap(), 0.0);
        assert!(bilinear_estimate(&op, 1, 1, 4, MatrixFunction::Exp, 1e-12).is_err());
    }

    #[test]
    fn resolvent_diagonal_matches_inverse() {
        let g = samples::example1();
        let op = g.bipartite();
        let iv = spectrum_interval(&g);
        let sigma1 = power_singular_pair(&g, 1e-14, 10_000).sigma1;
        let c = 0.9 / sigma1;
        let a = g.to_dense();
        let m = DMatrix::identity(4, 4) - (&a * a.transpose()) * (c * c);
        let inv = m.try_inverse().unwrap();
        for node in 0..4 {
            let b = radau_bounds(&op, node, 8, iv, MatrixFunction::Resolvent { c }).unwrap();
            assert!(b.exact);
            assert!((b.lower - inv[(node, node)]).abs() < 1e-8);
        }
    }
}
