//! Rankings from the exponential of the bipartite operator.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use super::{Diagnostics, HubAuthority, MethodInfo, ScoreVector, Side};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::linalg::svd::top_singular_triplets;
use crate::linalg::{dense_expm, DENSE_LIMIT};
use crate::quadrature::{
    bilinear_estimate, breakdown_tolerance, spectrum_interval, MatrixFunction, NodeBounds, QuadratureProbe,
};

/// Lanczos order used for quadrature estimates of off-diagonal entries.
const BILINEAR_STEPS: usize = 64;

/// How a matrix-function quantity is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvaluationMode {
    Dense,
    Quadrature,
    /// Dense when the bipartite operator fits under the dense limit.
    Auto,
}

/// Which block of `e^𝒜` a communicability is read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Communicability {
    /// `[cosh √(AAᵀ)]_ij`
    Hub,
    /// `[cosh √(AᵀA)]_ij`
    Authority,
    /// `[e^𝒜]_{i, n+j}`, node `i` as hub and `j` as authority.
    HubAuthority,
}

pub(crate) fn dense_bipartite_exp(g: &DirectedGraph) -> Result<DMatrix<f64>> {
    let dim = 2 * g.n();
    if dim > DENSE_LIMIT {
        return Err(Error::TooLarge { dim, limit: DENSE_LIMIT });
    }
    dense_expm(&g.bipartite().to_dense())
}

/// Hub and authority scores as the two halves of the diagonal of the dense
/// `e^𝒜`.
pub fn exp_centrality_exact(g: &DirectedGraph) -> Result<HubAuthority> {
    let e = dense_bipartite_exp(g)?;
    let n = g.n();
    let info = MethodInfo::new("exp-exact");
    Ok(HubAuthority {
        hub: ScoreVector::new(info.clone(), Side::Hub, (0..n).map(|i| e[(i, i)]).collect(), Diagnostics::converged(0))?,
        authority: ScoreVector::new(
            info,
            Side::Authority,
            (n..2 * n).map(|i| e[(i, i)]).collect(),
            Diagnostics::converged(0),
        )?,
    })
}

/// Refines the bracket of one bipartite diagonal entry with
/// `p = 3, 5, 7, …` until its relative width drops below `width_tol` or
/// `p_max` is reached.
pub(crate) fn resolve_node(
    probe: &mut QuadratureProbe<'_, crate::graph::BipartiteOperator<'_>>,
    p_max: usize,
    width_tol: f64,
) -> Result<NodeBounds> {
    let mut p = p_max.min(3);
    loop {
        let b = probe.bounds(p)?;
        if b.is_resolved(width_tol) || p >= p_max {
            return Ok(b);
        }
        p = (p + 2).min(p_max);
    }
}

/// Hub and authority scores as midpoints of Gauss-Radau brackets.
///
/// Every node is refined independently (in parallel) until its bracket is
/// narrower than `width_tol · max(1, lower)`. The brackets are kept in the
/// diagnostics; nodes still unresolved at `p_max` clear `converged`.
pub fn exp_centrality_quadrature(g: &DirectedGraph, p_max: usize, width_tol: f64) -> Result<HubAuthority> {
    quadrature_diagonal(g, MatrixFunction::Exp, p_max, width_tol, MethodInfo::new("exp-quadrature"))
}

pub(crate) fn quadrature_diagonal(
    g: &DirectedGraph,
    f: MatrixFunction,
    p_max: usize,
    width_tol: f64,
    info: MethodInfo,
) -> Result<HubAuthority> {
    if p_max == 0 {
        return Err(Error::InvalidParameter("p_max must be at least 1".into()));
    }
    if !(width_tol >= 0.0) {
        return Err(Error::InvalidParameter(format!("width tolerance {width_tol} must be nonnegative")));
    }
    let n = g.n();
    let op = g.bipartite();
    let interval = match f {
        MatrixFunction::Exp => spectrum_interval(g),
        MatrixFunction::Resolvent { c } => super::resolvent::resolvent_interval(g, c),
    };
    let bounds: Vec<NodeBounds> = (0..2 * n)
        .into_par_iter()
        .map(|node| {
            let mut probe = QuadratureProbe::new(&op, node, interval, f);
            resolve_node(&mut probe, p_max, width_tol)
        })
        .collect::<Result<_>>()?;

    let info = info.with("p_max", p_max as f64).with("width_tol", width_tol);
    let side_vector = |side: Side, range: std::ops::Range<usize>| {
        let mut part: Vec<NodeBounds> = bounds[range].to_vec();
        for (i, b) in part.iter_mut().enumerate() {
            b.node = i;
        }
        let unresolved = part.iter().filter(|b| !b.is_resolved(width_tol)).count();
        let mut diagnostics = Diagnostics {
            iterations: part.iter().map(|b| b.p).max().unwrap_or(0),
            converged: unresolved == 0,
            residual: Some(part.iter().map(|b| b.width()).fold(0.0, f64::max)),
            ..Default::default()
        };
        if unresolved > 0 {
            diagnostics.notes.push(format!("{unresolved} brackets wider than the tolerance at p_max"));
        }
        let scores = part.iter().map(NodeBounds::midpoint).collect();
        diagnostics.bounds = part;
        ScoreVector::new(info.clone(), side, scores, diagnostics)
    };
    Ok(HubAuthority { hub: side_vector(Side::Hub, 0..n)?, authority: side_vector(Side::Authority, n..2 * n)? })
}

/// Diagonal of the first `k` terms of the spectral expansion
/// `e^𝒜 = Σ e^{λ_j} w_j w_jᵀ`, with eigenvalues taken in decreasing order.
///
/// The eigenpairs come from singular triplets of `A`: `±σ` pair with
/// `(u, ±v)/√2`. Eigenvalue 0 has no unique basis, so once `k` reaches it
/// the whole zero eigenspace enters at once. `k = 2n` gives `e^𝒜` exactly
/// and `k = 1` ranks like HITS.
pub fn truncated_spectral_scores(g: &DirectedGraph, k: usize) -> Result<HubAuthority> {
    let n = g.n();
    if k == 0 || k > 2 * n {
        return Err(Error::InvalidParameter(format!("number of terms {k} must lie in [1, {}]", 2 * n)));
    }
    let tol = 1e-10;
    let mut triplets = top_singular_triplets(g, k.max(2).min(n), tol)?;
    let leading_positive = triplets.values.iter().take(k).all(|&s| s > 0.0) && triplets.values.len() >= k;
    if !leading_positive && !triplets.complete {
        triplets = top_singular_triplets(g, n, tol)?;
    }
    let positive: Vec<usize> = (0..triplets.values.len()).filter(|&t| triplets.left[t].is_some()).collect();
    let r = positive.len();

    let mut hub = vec![0.0; n];
    let mut authority = vec![0.0; n];
    let add_term = |hub: &mut [f64], authority: &mut [f64], t: usize, lambda: f64| {
        let weight = 0.5 * lambda.exp();
        let u = triplets.left[t].as_ref().expect("positive singular value has a left vector");
        for i in 0..n {
            hub[i] += weight * u[i] * u[i];
            authority[i] += weight * triplets.right[t][i] * triplets.right[t][i];
        }
    };
    for &t in positive.iter().take(k) {
        add_term(&mut hub, &mut authority, t, triplets.values[t]);
    }
    if k > r {
        // The zero eigenspace projects onto null(Aᵀ) ⊕ null(A).
        let mut hub_proj = vec![1.0; n];
        let mut auth_proj = vec![1.0; n];
        for &t in &positive {
            let u = triplets.left[t].as_ref().unwrap();
            for i in 0..n {
                hub_proj[i] -= u[i] * u[i];
                auth_proj[i] -= triplets.right[t][i] * triplets.right[t][i];
            }
        }
        for i in 0..n {
            hub[i] += hub_proj[i].max(0.0);
            authority[i] += auth_proj[i].max(0.0);
        }
        let zero_block = 2 * n - 2 * r;
        let negatives = k.saturating_sub(r + zero_block);
        for &t in positive.iter().rev().take(negatives) {
            add_term(&mut hub, &mut authority, t, -triplets.values[t]);
        }
    }

    let degenerate = triplets.values.len() >= 2
        && triplets.values[0] > 0.0
        && triplets.values[0] - triplets.values[1] < tol * triplets.values[0];
    let mut diagnostics = Diagnostics { converged: true, degenerate, ..Default::default() };
    if degenerate {
        diagnostics.notes.push("leading singular value is repeated; the one-term ranking is not unique".into());
    }
    let info = MethodInfo::new("truncated").with("terms", k as f64);
    Ok(HubAuthority {
        hub: ScoreVector::new(info.clone(), Side::Hub, hub, diagnostics.clone())?,
        authority: ScoreVector::new(info, Side::Authority, authority, diagnostics)?,
    })
}

/// Communicability between nodes `i` and `j` read from `e^𝒜`.
pub fn communicability(
    g: &DirectedGraph,
    i: usize,
    j: usize,
    kind: Communicability,
    mode: EvaluationMode,
) -> Result<f64> {
    let n = g.n();
    if i >= n || j >= n {
        return Err(Error::InvalidParameter(format!("nodes {i}, {j} out of range for {n} nodes")));
    }
    if i == j && kind != Communicability::HubAuthority {
        return Err(Error::InvalidParameter(
            "same-side communicability needs i != j; the diagonal is the centrality score".into(),
        ));
    }
    let (row, col) = match kind {
        Communicability::Hub => (i, j),
        Communicability::Authority => (n + i, n + j),
        Communicability::HubAuthority => (i, n + j),
    };
    let dense = match mode {
        EvaluationMode::Dense => true,
        EvaluationMode::Quadrature => false,
        EvaluationMode::Auto => 2 * n <= DENSE_LIMIT,
    };
    if dense {
        return Ok(dense_bipartite_exp(g)?[(row, col)]);
    }
    let op = g.bipartite();
    let tol = breakdown_tolerance(spectrum_interval(g));
    bilinear_estimate(&op, row, col, BILINEAR_STEPS.min(2 * n), MatrixFunction::Exp, tol)
}
