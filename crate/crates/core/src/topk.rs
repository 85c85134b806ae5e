//! Top-k hubs or authorities from Gauss-Radau brackets, refining only the
//! nodes that can still change the answer.
//!
//! Each round computes `L*`, the k-th largest lower bound among the
//! candidates, and drops every candidate whose upper bound is below it.
//! Lower bounds only grow and upper bounds only shrink with the Lanczos
//! order, so a dropped node can never re-enter. The survivors are refined
//! with two more Lanczos steps until the leading k are certified.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BipartiteOperator, DirectedGraph};
use crate::quadrature::{spectrum_interval, MatrixFunction, NodeBounds, QuadratureProbe, SpectrumInterval};
use crate::rankers::{RankTable, Side, TIE_TOL};

/// Retained Lanczos vectors (in floats) above which the per-node state is
/// dropped after each pass and rebuilt on demand.
const STATE_BUDGET: usize = 1 << 25;

/// Relative width below which a bracket is considered resolved.
const RESOLVED_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct TopKOptions {
    pub p_max: usize,
    /// Drop nodes whose in-degree and out-degree are both 1.
    pub exclude_degree_one: bool,
    /// After certifying the set, refine members until their order is known.
    pub order_members: bool,
}

impl Default for TopKOptions {
    fn default() -> Self {
        TopKOptions { p_max: 64, exclude_degree_one: false, order_members: true }
    }
}

/// Result of a top-k search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopKReport {
    pub k: usize,
    pub m: usize,
    pub side: Side,
    /// Members in descending order of their bracket midpoints.
    pub members: Vec<usize>,
    /// Final brackets of the members, in the same order.
    pub member_bounds: Vec<NodeBounds>,
    /// Every member provably ranks within the top `m`.
    pub certified: bool,
    /// Member brackets are pairwise separated, so their order is certain.
    pub fully_ordered: bool,
    /// Lanczos order reached per node; 0 for nodes that needed no run.
    pub iterations: Vec<usize>,
    pub max_iterations: usize,
    pub rounds: usize,
    /// Nodes without edges on the scored side; their score is exactly 1.
    pub excluded_zero_degree: usize,
    pub excluded_degree_one: usize,
    /// Groups of nodes whose scores could not be separated and were
    /// ordered by ascending id.
    pub ties: Vec<Vec<usize>>,
}

struct Candidate<'a, 'g> {
    node: usize,
    bounds: NodeBounds,
    probe: Option<QuadratureProbe<'a, BipartiteOperator<'g>>>,
}

impl Candidate<'_, '_> {
    fn finished(&self, p_max: usize) -> bool {
        self.bounds.is_resolved(RESOLVED_TOL) || self.bounds.p >= p_max
    }
}

fn slack(x: f64) -> f64 {
    TIE_TOL * x.abs().max(1.0)
}

/// The k nodes with the largest scores on `side`.
pub fn identify_top_k(g: &DirectedGraph, k: usize, side: Side, opts: &TopKOptions) -> Result<TopKReport> {
    search(g, k, k, side, opts)
}

/// `k` nodes certified to rank within the top `m`.
///
/// With `m = k` this is [`identify_top_k`]. Larger `m` never needs more
/// Lanczos steps per node than a smaller one.
pub fn rank_in_top_m(g: &DirectedGraph, k: usize, m: usize, side: Side, opts: &TopKOptions) -> Result<TopKReport> {
    search(g, k, m, side, opts)
}

fn search(g: &DirectedGraph, k: usize, m: usize, side: Side, opts: &TopKOptions) -> Result<TopKReport> {
    let n = g.n();
    if opts.p_max == 0 {
        return Err(Error::InvalidParameter("p_max must be at least 1".into()));
    }
    let (out_deg, in_deg) = g.degrees();
    let degree_one = |i: usize| opts.exclude_degree_one && out_deg[i] == 1 && in_deg[i] == 1;
    let eligible: Vec<usize> = (0..n).filter(|&i| !degree_one(i)).collect();
    if k == 0 || k > eligible.len() {
        return Err(Error::InvalidParameter(format!("k = {k} must lie in [1, {}] (eligible nodes)", eligible.len())));
    }
    if m < k || m > eligible.len() {
        return Err(Error::InvalidParameter(format!("m = {m} must lie in [{k}, {}]", eligible.len())));
    }
    let scored_degree = |i: usize| match side {
        Side::Hub => out_deg[i],
        Side::Authority => in_deg[i],
    };
    let offset = match side {
        Side::Hub => 0,
        Side::Authority => n,
    };

    let op = g.bipartite();
    let interval = spectrum_interval(g);
    let p_start = opts.p_max.min(3);
    let mut candidates: Vec<Candidate> = eligible
        .iter()
        .map(|&node| Candidate {
            node,
            bounds: NodeBounds { node, lower: 1.0, upper: 1.0, p: 0, exact: true },
            probe: None,
        })
        .collect();
    let excluded_zero_degree = eligible.iter().filter(|&&i| scored_degree(i) == 0).count();
    let mut iterations = vec![0; n];
    {
        let mut active: Vec<&mut Candidate> = Vec::new();
        for c in candidates.iter_mut() {
            if scored_degree(c.node) > 0 {
                c.bounds =
                    NodeBounds { node: c.node, lower: f64::NEG_INFINITY, upper: f64::INFINITY, p: 0, exact: false };
                active.push(c);
            }
        }
        refine_refs(&mut active, &op, offset, interval, Some(p_start), opts.p_max)?;
    }

    let mut rounds = 1;
    let mut certified;
    loop {
        for c in &candidates {
            iterations[c.node] = c.bounds.p;
        }
        // k-th largest lower bound and pruning.
        let mut lowers: Vec<f64> = candidates.iter().map(|c| c.bounds.lower).collect();
        lowers.sort_by(|a, b| b.total_cmp(a));
        let l_star = lowers[k - 1];
        candidates.retain(|c| c.bounds.upper >= l_star - slack(l_star));

        let leading = leading_by_lower(&candidates, k);
        certified = leading.iter().all(|&a| {
            let li = candidates[a].bounds.lower;
            let rivals =
                candidates.iter().enumerate().filter(|&(b, c)| b != a && c.bounds.upper >= li - slack(li)).count();
            rivals < m
        });
        let open: Vec<usize> = (0..candidates.len()).filter(|&a| !candidates[a].finished(opts.p_max)).collect();
        if certified || open.is_empty() {
            break;
        }
        rounds += 1;
        refine(&mut candidates, &op, offset, interval, opts.p_max)?;
    }

    // Members: the certified leading set, or the tie-rule choice among
    // survivors when brackets could not be separated.
    let mut member_idx = if certified {
        leading_by_lower(&candidates, k)
    } else {
        let mids: Vec<f64> = candidates.iter().map(|c| c.bounds.midpoint()).collect();
        RankTable::from_scores(&mids).top(k).to_vec()
    };

    let mut fully_ordered = separated(&candidates, &member_idx);
    if certified && m == k && opts.order_members && !fully_ordered {
        loop {
            let open: Vec<usize> = member_idx
                .iter()
                .copied()
                .filter(|&a| !candidates[a].finished(opts.p_max) && overlaps_another(&candidates, &member_idx, a))
                .collect();
            if open.is_empty() {
                break;
            }
            rounds += 1;
            let mut refs: Vec<&mut Candidate> =
                candidates.iter_mut().enumerate().filter(|(a, _)| open.contains(a)).map(|(_, c)| c).collect();
            refine_refs(&mut refs, &op, offset, interval, None, opts.p_max)?;
            if separated(&candidates, &member_idx) {
                break;
            }
        }
        fully_ordered = separated(&candidates, &member_idx);
    }
    for c in &candidates {
        iterations[c.node] = c.bounds.p;
    }

    // Order members by midpoint with the tie rule.
    let mids: Vec<f64> = member_idx.iter().map(|&a| candidates[a].bounds.midpoint()).collect();
    let table = RankTable::from_scores(&mids);
    let mut ties: Vec<Vec<usize>> = table
        .groups()
        .filter(|grp| grp.len() > 1)
        .map(|grp| grp.iter().map(|&t| candidates[member_idx[t]].node).collect())
        .collect();
    member_idx = table.order().iter().map(|&t| member_idx[t]).collect();
    if !certified {
        let mids: Vec<f64> = candidates.iter().map(|c| c.bounds.midpoint()).collect();
        let all = RankTable::from_scores(&mids);
        for grp in all.groups() {
            let inside = grp.iter().filter(|a| member_idx.contains(a)).count();
            if inside > 0 && inside < grp.len() {
                ties.push(grp.iter().map(|&a| candidates[a].node).collect());
            }
        }
    }

    let members: Vec<usize> = member_idx.iter().map(|&a| candidates[a].node).collect();
    let member_bounds: Vec<NodeBounds> =
        member_idx.iter().map(|&a| NodeBounds { node: candidates[a].node, ..candidates[a].bounds }).collect();
    Ok(TopKReport {
        k,
        m,
        side,
        members,
        member_bounds,
        certified,
        fully_ordered,
        max_iterations: iterations.iter().copied().max().unwrap_or(0),
        iterations,
        rounds,
        excluded_zero_degree,
        excluded_degree_one: n - eligible.len(),
        ties,
    })
}

/// Indices of the k candidates with the largest lower bounds (ties by
/// larger upper bound, then by node id).
fn leading_by_lower(cands: &[Candidate], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..cands.len()).collect();
    idx.sort_by(|&a, &b| {
        let (x, y) = (&cands[a].bounds, &cands[b].bounds);
        y.lower.total_cmp(&x.lower).then(y.upper.total_cmp(&x.upper)).then(cands[a].node.cmp(&cands[b].node))
    });
    idx.truncate(k);
    idx
}

fn overlaps_another(cands: &[Candidate], members: &[usize], a: usize) -> bool {
    let x = &cands[a].bounds;
    members.iter().any(|&b| {
        let y = &cands[b].bounds;
        b != a && x.lower <= y.upper && y.lower <= x.upper && !both_tight_tie(x, y)
    })
}

// Two resolved brackets whose scores are tied by the tie rule do not need
// further separation.
fn both_tight_tie(x: &NodeBounds, y: &NodeBounds) -> bool {
    x.is_resolved(RESOLVED_TOL) && y.is_resolved(RESOLVED_TOL) && crate::rankers::tied(x.midpoint(), y.midpoint())
}

fn separated(cands: &[Candidate], members: &[usize]) -> bool {
    members.iter().all(|&a| {
        let x = &cands[a].bounds;
        members.iter().all(|&b| {
            let y = &cands[b].bounds;
            b == a || x.upper < y.lower || y.upper < x.lower || both_tight_tie(x, y)
        })
    })
}

/// Advances every unfinished candidate by two Lanczos steps.
fn refine<'a, 'g>(
    cands: &mut [Candidate<'a, 'g>],
    op: &'a BipartiteOperator<'g>,
    offset: usize,
    interval: SpectrumInterval,
    p_max: usize,
) -> Result<()> {
    let mut refs: Vec<&mut Candidate<'a, 'g>> = cands.iter_mut().filter(|c| !c.finished(p_max)).collect();
    refine_refs(&mut refs, op, offset, interval, None, p_max)
}

/// Moves each candidate to order `p`, or two steps further when `p` is
/// `None`, capped at `p_max`. Lanczos state is kept for the next pass only
/// while the whole batch fits in [`STATE_BUDGET`].
fn refine_refs<'a, 'g>(
    refs: &mut [&mut Candidate<'a, 'g>],
    op: &'a BipartiteOperator<'g>,
    offset: usize,
    interval: SpectrumInterval,
    p: Option<usize>,
    p_max: usize,
) -> Result<()> {
    let target = |c: &Candidate| p.unwrap_or(c.bounds.p + 2).min(p_max);
    let retained: usize = refs.iter().map(|c| (target(c) + 2) * op.graph().n() * 2).sum();
    let keep = retained <= STATE_BUDGET;
    refs.par_iter_mut().try_for_each(|c| {
        let result = update(c, op, offset, interval, target(c));
        if !keep {
            c.probe = None;
        }
        result
    })
}

fn update<'a, 'g>(
    c: &mut Candidate<'a, 'g>,
    op: &'a BipartiteOperator<'g>,
    offset: usize,
    interval: SpectrumInterval,
    p: usize,
) -> Result<()> {
    let node = c.node;
    let probe = c.probe.get_or_insert_with(|| QuadratureProbe::new(op, offset + node, interval, MatrixFunction::Exp));
    let fresh = probe.bounds(p)?;
    let old = c.bounds;
    c.bounds = NodeBounds {
        node,
        lower: fresh.lower.max(old.lower),
        upper: fresh.upper.min(old.upper),
        p: fresh.p,
        exact: fresh.exact,
    };
    if c.bounds.lower > c.bounds.upper {
        // Roundoff can cross nearly identical bounds; collapse to the midpoint.
        let mid = 0.5 * (c.bounds.lower + c.bounds.upper);
        c.bounds.lower = mid;
        c.bounds.upper = mid;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rankers::exp_centrality_exact;
    use crate::samples;

    #[test]
    fn example_three_top_hub() {
        let r = identify_top_k(&samples::example3(), 1, Side::Hub, &TopKOptions::default()).unwrap();
        assert_eq!(r.members, vec![5]);
        assert!(r.certified);
        assert!(r.member_bounds[0].exact);
        assert!((r.member_bounds[0].lower - 2f64.cosh()).abs() < 1e-12);
        assert_eq!(r.excluded_zero_degree, 1);
    }

    #[test]
    fn example_one_top_two_authorities() {
        let r = identify_top_k(&samples::example1(), 2, Side::Authority, &TopKOptions::default()).unwrap();
        assert_eq!(r.members, vec![1, 2]);
        assert!(r.certified && r.fully_ordered);
    }

    #[test]
    fn k_equal_n_orders_everything() {
        let g = samples::example1();
        let exact = exp_centrality_exact(&g).unwrap();
        for side in [Side::Hub, Side::Authority] {
            let r = identify_top_k(&g, 4, side, &TopKOptions::default()).unwrap();
            assert_eq!(r.members, exact.side(side).rank_table().order());
        }
    }

    #[test]
    fn relaxed_search() {
        let g = samples::example1();
        let opts = TopKOptions::default();
        let strict = rank_in_top_m(&g, 1, 1, Side::Hub, &opts).unwrap();
        assert_eq!(strict, identify_top_k(&g, 1, Side::Hub, &opts).unwrap());
        let relaxed = rank_in_top_m(&g, 1, 2, Side::Hub, &opts).unwrap();
        assert!(relaxed.certified);
        assert_eq!(relaxed.members, vec![0]);
        for (a, b) in relaxed.iterations.iter().zip(&strict.iterations) {
            assert!(a <= b);
        }
        let all = rank_in_top_m(&g, 2, 4, Side::Hub, &opts).unwrap();
        assert_eq!(all.rounds, 1);
    }

    #[test]
    fn invalid_k_and_m() {
        let g = samples::example1();
        let opts = TopKOptions::default();
        assert!(identify_top_k(&g, 0, Side::Hub, &opts).is_err());
        assert!(identify_top_k(&g, 10, Side::Hub, &opts).is_err());
        assert!(rank_in_top_m(&g, 2, 1, Side::Hub, &opts).is_err());
    }

    #[test]
    fn ties_are_flagged() {
        // Example 2 authorities 1 and 4 have identical scores.
        let r = identify_top_k(&samples::example2(), 2, Side::Authority, &TopKOptions::default()).unwrap();
        assert_eq!(r.members, vec![1, 0]);
        assert!(!r.ties.is_empty());
    }

    #[test]
    fn degree_one_exclusion() {
        let opts = TopKOptions { exclude_degree_one: true, ..TopKOptions::default() };
        let r = identify_top_k(&samples::example1(), 1, Side::Hub, &opts).unwrap();
        assert_eq!(r.excluded_degree_one, 1);
        assert_eq!(r.members, vec![0]);
    }
}
