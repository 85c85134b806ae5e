//! Scoring schemes for hubs and authorities behind one interface.
//!
//! Every ranker returns a [`ScoreVector`] per side; [`RankTable`] turns a
//! score vector into a tie-aware ordering.

mod exponential;
mod hits;
mod pagerank;
mod resolvent;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::quadrature::NodeBounds;

pub use exponential::{
    communicability, exp_centrality_exact, exp_centrality_quadrature, truncated_spectral_scores, Communicability,
    EvaluationMode,
};
pub use hits::{hits, HitsInit, HitsOptions};
pub use pagerank::{pagerank, PageRankOptions};
pub use resolvent::{expa_row_col_sums, katz_row_col, resolvent_bipartite};

/// Relative tolerance under which two scores are considered tied.
pub const TIE_TOL: f64 = 1e-8;

/// Which diagonal block of the bipartite operator a score belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Hub,
    Authority,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Hub => "hub",
            Side::Authority => "authority",
        }
    }
}

/// Name of a ranking method together with the parameter values it used.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodInfo {
    pub name: &'static str,
    pub params: BTreeMap<&'static str, f64>,
}

impl MethodInfo {
    pub fn new(name: &'static str) -> Self {
        MethodInfo { name, params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &'static str, value: f64) -> Self {
        self.params.insert(key, value);
        self
    }
}

/// Solver bookkeeping attached to a score vector.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    pub iterations: usize,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    /// The leading singular value is numerically repeated, so the
    /// dominant singular vector (and with it HITS) is not unique.
    pub degenerate: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Quadrature brackets, one per node, for the quadrature-based methods.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<NodeBounds>,
}

impl Diagnostics {
    pub fn converged(iterations: usize) -> Self {
        Diagnostics { iterations, converged: true, ..Default::default() }
    }
}

/// Scores of one method on one side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreVector {
    pub method: MethodInfo,
    pub side: Side,
    pub scores: Vec<f64>,
    pub diagnostics: Diagnostics,
}

impl ScoreVector {
    /// Validates that every score is finite and nonnegative.
    pub fn new(method: MethodInfo, side: Side, scores: Vec<f64>, diagnostics: Diagnostics) -> Result<Self> {
        if let Some((i, s)) = scores.iter().enumerate().find(|(_, s)| !s.is_finite()) {
            return Err(Error::Numerical(format!("{} produced a non-finite score {s} at node {i}", method.name)));
        }
        // Iterative solvers can leave roundoff-sized negatives on zero entries.
        let scores = scores.into_iter().map(|s| if s <= 0.0 && s > -1e-12 { 0.0 } else { s }).collect::<Vec<_>>();
        if let Some((i, s)) = scores.iter().enumerate().find(|(_, s)| **s < 0.0) {
            return Err(Error::Numerical(format!("{} produced a negative score {s} at node {i}", method.name)));
        }
        Ok(ScoreVector { method, side, scores, diagnostics })
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn rank_table(&self) -> RankTable {
        RankTable::from_scores(&self.scores)
    }
}

/// Hub and authority score vectors of one method.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HubAuthority {
    pub hub: ScoreVector,
    pub authority: ScoreVector,
}

impl HubAuthority {
    pub fn side(&self, side: Side) -> &ScoreVector {
        match side {
            Side::Hub => &self.hub,
            Side::Authority => &self.authority,
        }
    }

    pub fn into_side(self, side: Side) -> ScoreVector {
        match side {
            Side::Hub => self.hub,
            Side::Authority => self.authority,
        }
    }
}

/// `|a − b| ≤ TIE_TOL · max(1, |a|)`.
pub fn tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOL * a.abs().max(1.0)
}

/// Descending ordering of nodes with tie groups.
///
/// Scores are sorted in decreasing order and split into maximal runs in
/// which consecutive scores are tied; inside a run nodes are listed by
/// ascending id. Ranks are 1-based competition ranks, so all members of a
/// tie group share the position of the group's first slot.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankTable {
    order: Vec<usize>,
    /// Half-open position ranges into `order`.
    groups: Vec<(usize, usize)>,
    ranks: Vec<usize>,
    scores: Vec<f64>,
}

impl RankTable {
    pub fn from_scores(scores: &[f64]) -> Self {
        let n = scores.len();
        let mut sorted: Vec<usize> = (0..n).collect();
        sorted.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
        let mut order = Vec::with_capacity(n);
        let mut groups = Vec::new();
        let mut ranks = vec![0; n];
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && tied(scores[sorted[end - 1]], scores[sorted[end]]) {
                end += 1;
            }
            let mut members = sorted[start..end].to_vec();
            members.sort_unstable();
            for &node in &members {
                ranks[node] = start + 1;
            }
            order.extend(members);
            groups.push((start, end));
            start = end;
        }
        RankTable { order, groups, ranks, scores: scores.to_vec() }
    }

    /// Nodes by decreasing score.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Competition rank of every node (1 = best).
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Tie groups in order, each as a slice of node ids.
    pub fn groups(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.groups.iter().map(move |&(a, b)| &self.order[a..b])
    }

    /// The first `k` nodes of the ordering (ties broken by ascending id).
    pub fn top(&self, k: usize) -> &[usize] {
        &self.order[..k.min(self.order.len())]
    }

    /// True when both tables assign every node the same rank.
    pub fn same_ranking(&self, other: &RankTable) -> bool {
        self.ranks == other.ranks
    }

    /// Renders the ordering like `{1,2,3; 4}`, with ties separated by
    /// commas and groups by semicolons, using ids offset by `base`.
    pub fn display(&self, base: usize) -> String {
        let parts: Vec<String> =
            self.groups().map(|g| g.iter().map(|v| (v + base).to_string()).collect::<Vec<_>>().join(",")).collect();
        format!("{{{}}}", parts.join("; "))
    }
}

/// Out-degrees as hub scores and in-degrees as authority scores.
pub fn degree_scores(g: &DirectedGraph) -> Result<HubAuthority> {
    let info = MethodInfo::new("degree");
    let to_f64 = |d: Vec<usize>| d.into_iter().map(|v| v as f64).collect::<Vec<_>>();
    Ok(HubAuthority {
        hub: ScoreVector::new(info.clone(), Side::Hub, to_f64(g.out_degrees()), Diagnostics::converged(0))?,
        authority: ScoreVector::new(info, Side::Authority, to_f64(g.in_degrees()), Diagnostics::converged(0))?,
    })
}

/// Ranking methods available through [`rank`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Diagonal of the dense bipartite exponential.
    ExpExact,
    /// Gauss-Radau brackets of the bipartite exponential diagonal.
    ExpQuadrature,
    Hits,
    /// Leading terms of the spectral expansion of the bipartite exponential.
    Truncated,
    Katz,
    /// Diagonal of the bipartite resolvent.
    Resolvent,
    /// Row (hub) and column (authority) sums of `e^A`.
    ExpaSums,
    /// PageRank for authorities, Reverse PageRank for hubs.
    Pagerank,
    Degree,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ExpExact => "exp-exact",
            Method::ExpQuadrature => "exp-quadrature",
            Method::Hits => "hits",
            Method::Truncated => "truncated",
            Method::Katz => "katz",
            Method::Resolvent => "resolvent",
            Method::ExpaSums => "expa-sums",
            Method::Pagerank => "pagerank",
            Method::Degree => "degree",
        }
    }
}

/// Parameters shared by the rankers; each method reads the ones it needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOptions {
    /// Katz or resolvent parameter; `None` selects the method's default.
    pub c: Option<f64>,
    pub alpha: f64,
    /// Convergence tolerance of the iterative methods (HITS, PageRank).
    pub tol: Option<f64>,
    pub max_iter: usize,
    /// Largest Lanczos order for quadrature-based methods.
    pub p_max: usize,
    /// Relative bracket width at which a quadrature score is accepted.
    pub width_tol: f64,
    /// Number of spectral terms for [`Method::Truncated`].
    pub terms: usize,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions { c: None, alpha: 0.85, tol: None, max_iter: 1000, p_max: 64, width_tol: 1e-10, terms: 1 }
    }
}

/// Runs `method` and returns the scores for `side`.
pub fn rank(g: &DirectedGraph, method: Method, side: Side, opts: &RankOptions) -> Result<ScoreVector> {
    let pair = match method {
        Method::ExpExact => exp_centrality_exact(g)?,
        Method::ExpQuadrature => exp_centrality_quadrature(g, opts.p_max, opts.width_tol)?,
        Method::Hits => {
            let mut h = HitsOptions { max_iter: opts.max_iter, ..HitsOptions::default() };
            if let Some(tol) = opts.tol {
                h.tol = tol;
            }
            hits(g, &h)?
        }
        Method::Truncated => truncated_spectral_scores(g, opts.terms)?,
        Method::Katz => katz_row_col(g, opts.c)?,
        Method::Resolvent => resolvent_bipartite(g, opts.c, EvaluationMode::Auto)?,
        Method::ExpaSums => expa_row_col_sums(g)?,
        Method::Pagerank => {
            let mut p = PageRankOptions { alpha: opts.alpha, max_iter: opts.max_iter, ..PageRankOptions::default() };
            if let Some(tol) = opts.tol {
                p.tol = tol;
            }
            return pagerank(g, &p, side == Side::Hub);
        }
        Method::Degree => degree_scores(g)?,
    };
    Ok(pair.into_side(side))
}
