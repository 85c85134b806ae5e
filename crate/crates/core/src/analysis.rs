//! Comparing rankings and summarizing the spectrum of a graph.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::linalg::{power_singular_pair, Lanczos, DENSE_LIMIT};
use crate::rankers::{RankTable, ScoreVector};

/// Relative gap below which the leading singular value counts as repeated.
pub const DEGENERATE_GAP: f64 = 1e-8;
/// Relative gap below which HITS and exponential rankings tend to differ.
pub const SMALL_GAP: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    /// Method names, when the tables came from named score vectors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub methods: Option<(String, String)>,
    pub kendall_tau_b: f64,
    /// `(k, overlap)` pairs.
    pub overlap_at_k: Vec<(usize, f64)>,
    /// `(k, top-k of a, top-k of b)` with ties broken by ascending id.
    pub top_k: Vec<(usize, Vec<usize>, Vec<usize>)>,
}

/// Tau-b rank correlation and top-k overlaps of two rankings of the same
/// node set.
pub fn compare(a: &RankTable, b: &RankTable, ks: &[usize]) -> Result<ComparisonReport> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!("rankings of {} and {} nodes", a.len(), b.len())));
    }
    let mut overlap_at_k = Vec::with_capacity(ks.len());
    let mut top_k = Vec::with_capacity(ks.len());
    for &k in ks {
        if k == 0 || k > a.len() {
            return Err(Error::InvalidParameter(format!("k = {k} must lie in [1, {}]", a.len())));
        }
        overlap_at_k.push((k, overlap(a, b, k)));
        top_k.push((k, a.top(k).to_vec(), b.top(k).to_vec()));
    }
    Ok(ComparisonReport { methods: None, kendall_tau_b: kendall_tau_b(a, b), overlap_at_k, top_k })
}

/// [`compare`] on the rankings of two score vectors, recording the method
/// names.
pub fn compare_methods(a: &ScoreVector, b: &ScoreVector, ks: &[usize]) -> Result<ComparisonReport> {
    let mut report = compare(&a.rank_table(), &b.rank_table(), ks)?;
    report.methods = Some((a.method.name.to_string(), b.method.name.to_string()));
    Ok(report)
}

/// Kendall's tau-b over the tie-aware ranks of the two tables.
///
/// When one ranking is constant the coefficient is undefined; 1 is
/// returned if both rankings are identical and 0 otherwise.
pub fn kendall_tau_b(a: &RankTable, b: &RankTable) -> f64 {
    let (ra, rb) = (a.ranks(), b.ranks());
    let n = ra.len();
    let (mut concordant, mut discordant, mut ties_a, mut ties_b) = (0u64, 0u64, 0u64, 0u64);
    for i in 0..n {
        for j in i + 1..n {
            let da = ra[i].cmp(&ra[j]);
            let db = rb[i].cmp(&rb[j]);
            match (da.is_eq(), db.is_eq()) {
                (true, true) => {
                    ties_a += 1;
                    ties_b += 1;
                }
                (true, false) => ties_a += 1,
                (false, true) => ties_b += 1,
                (false, false) if da == db => concordant += 1,
                (false, false) => discordant += 1,
            }
        }
    }
    let pairs = (n * n.saturating_sub(1) / 2) as u64;
    let denom = (((pairs - ties_a) as f64) * ((pairs - ties_b) as f64)).sqrt();
    if denom == 0.0 {
        return if ra == rb { 1.0 } else { 0.0 };
    }
    (concordant as f64 - discordant as f64) / denom
}

/// Share of each node in the first `k` slots: a tie group straddling slot
/// `k` spreads the remaining slots evenly over its members.
fn slot_weights(t: &RankTable, k: usize) -> Vec<f64> {
    let mut w = vec![0.0; t.len()];
    let mut start = 0;
    for group in t.groups() {
        let inside = k.saturating_sub(start).min(group.len());
        for &v in group {
            w[v] = inside as f64 / group.len() as f64;
        }
        start += group.len();
    }
    w
}

/// Fraction of the top-`k` shared by both rankings, with tie groups at the
/// boundary counted fractionally.
pub fn overlap(a: &RankTable, b: &RankTable, k: usize) -> f64 {
    let (wa, wb) = (slot_weights(a, k), slot_weights(b, k));
    let shared: f64 = wa.iter().zip(&wb).map(|(x, y)| x.min(*y)).sum();
    (shared / k as f64).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapAnnotation {
    /// The leading singular value is repeated; HITS is not unique.
    Degenerate,
    /// Small gap: exponential and HITS rankings are likely to differ.
    DivergenceExpected,
    /// Large gap: the leading term dominates and HITS tracks the exponential.
    HitsMatchesExp,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub sigma1: f64,
    pub sigma2: f64,
    /// `(σ₁ − σ₂)/σ₁`, or 0 for an edgeless graph.
    pub relative_gap: f64,
    pub annotation: GapAnnotation,
    pub converged: bool,
}

/// Leading singular values and the relative gap between them.
pub fn spectral_gap(g: &DirectedGraph) -> GapReport {
    let est = power_singular_pair(g, 1e-12, 20_000);
    let relative_gap = if est.sigma1 > 0.0 { ((est.sigma1 - est.sigma2) / est.sigma1).clamp(0.0, 1.0) } else { 0.0 };
    let annotation = if relative_gap < DEGENERATE_GAP {
        GapAnnotation::Degenerate
    } else if relative_gap < SMALL_GAP {
        GapAnnotation::DivergenceExpected
    } else {
        GapAnnotation::HitsMatchesExp
    };
    GapReport { sigma1: est.sigma1, sigma2: est.sigma2, relative_gap, annotation, converged: est.converged }
}

/// Fraction of edges `i → j` whose reverse `j → i` is also present.
pub fn symmetry_fraction(g: &DirectedGraph) -> f64 {
    let m = g.edge_count();
    if m == 0 {
        return 0.0;
    }
    let mutual = g.edges().filter(|&(u, v, _)| g.has_edge(v, u)).count();
    mutual as f64 / m as f64
}

/// `Tr e^𝒜 = 2 Σ cosh σ_i`, summing over all `n` singular values of `A`.
pub fn estrada_index(g: &DirectedGraph) -> Result<f64> {
    let n = g.n();
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge { dim: n, limit: DENSE_LIMIT });
    }
    let sv = g.to_dense().svd(false, false).singular_values;
    Ok(2.0 * sv.iter().map(|s| s.cosh()).sum::<f64>())
}

/// Ritz values of `𝒜` after `p` Lanczos steps from the normalized ones
/// vector, ascending. They approximate the extreme eigenvalues `±σ_i`.
pub fn ritz_values(g: &DirectedGraph, p: usize) -> Result<Vec<f64>> {
    if p == 0 {
        return Err(Error::InvalidParameter("at least one Lanczos step is required".into()));
    }
    let op = g.bipartite();
    let dim = 2 * g.n();
    let start = vec![1.0; dim];
    let sigma1 = power_singular_pair(g, 1e-10, 1000).sigma1;
    let mut lanczos = Lanczos::new(&op, &start, 1e-12 * sigma1.max(1.0));
    lanczos.run_to(p);
    Ok(lanczos.jacobi().eigen()?.nodes)
}
