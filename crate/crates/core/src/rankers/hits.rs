//! Kleinberg's HITS iteration.

use super::{Diagnostics, HubAuthority, MethodInfo, ScoreVector, Side};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Orientation};
use crate::linalg::power_singular_pair;

/// Starting authority vector.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum HitsInit {
    #[default]
    Constant,
    Given(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct HitsOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub init: HitsInit,
}

impl Default for HitsOptions {
    fn default() -> Self {
        HitsOptions { tol: 1e-10, max_iter: 1000, init: HitsInit::Constant }
    }
}

fn normalize2(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

fn to_sum_one(v: &[f64]) -> Vec<f64> {
    let total: f64 = v.iter().sum();
    if total > 0.0 {
        v.iter().map(|x| x / total).collect()
    } else {
        v.to_vec()
    }
}

/// Hub and authority vectors from the alternating iteration
/// `y ← A x`, `x ← Aᵀ y` with 2-norm normalization.
///
/// Iteration stops when both vectors change by less than `tol` in the
/// ∞-norm. Scores are reported normalized to sum 1. A missed tolerance is
/// not an error: the last iterate is returned with `converged = false`.
pub fn hits(g: &DirectedGraph, opts: &HitsOptions) -> Result<HubAuthority> {
    let n = g.n();
    if g.edge_count() == 0 {
        return Err(Error::InvalidParameter("HITS needs at least one edge".into()));
    }
    if !(opts.tol > 0.0) || opts.max_iter == 0 {
        return Err(Error::InvalidParameter("HITS needs tol > 0 and max_iter ≥ 1".into()));
    }
    let mut x = match &opts.init {
        HitsInit::Constant => vec![1.0; n],
        HitsInit::Given(v) => {
            if v.len() != n {
                return Err(Error::DimensionMismatch(format!("initial vector of length {} for {n} nodes", v.len())));
            }
            if v.iter().any(|t| !t.is_finite() || *t < 0.0) {
                return Err(Error::InvalidParameter("initial HITS vector must be finite and nonnegative".into()));
            }
            v.clone()
        }
    };
    if normalize2(&mut x) == 0.0 {
        return Err(Error::InvalidParameter("initial HITS vector is zero".into()));
    }
    let mut y = vec![0.0; n];
    let mut x_next = vec![0.0; n];
    let mut y_prev = vec![0.0; n];
    let mut converged = false;
    let mut iterations = 0;
    let inf_change = |a: &[f64], b: &[f64]| a.iter().zip(b).fold(0.0f64, |m, (p, q)| m.max((p - q).abs()));
    while iterations < opts.max_iter {
        iterations += 1;
        y_prev.copy_from_slice(&y);
        g.spmv_into(&x, &mut y, Orientation::Direct);
        if normalize2(&mut y) == 0.0 {
            return Err(Error::Numerical("HITS iterate vanished; the start vector lies in the null space of A".into()));
        }
        g.spmv_into(&y, &mut x_next, Orientation::Transposed);
        normalize2(&mut x_next);
        let change = inf_change(&x_next, &x).max(inf_change(&y, &y_prev));
        std::mem::swap(&mut x, &mut x_next);
        if change < opts.tol {
            converged = true;
            break;
        }
    }

    let spectrum = power_singular_pair(g, 1e-12, opts.max_iter.max(10_000));
    let degenerate = spectrum.sigma1 - spectrum.sigma2 < opts.tol * spectrum.sigma1;
    let mut diagnostics = Diagnostics { iterations, converged, degenerate, ..Default::default() };
    if degenerate {
        diagnostics.notes.push("leading singular value is repeated; HITS scores depend on the start vector".into());
    }
    let info = MethodInfo::new("hits").with("tol", opts.tol).with("max_iter", opts.max_iter as f64);
    Ok(HubAuthority {
        hub: ScoreVector::new(info.clone(), Side::Hub, to_sum_one(&y), diagnostics.clone())?,
        authority: ScoreVector::new(info, Side::Authority, to_sum_one(&x), diagnostics)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn example_one_tables() {
        let h = hits(&samples::example1(), &HitsOptions::default()).unwrap();
        assert!(h.hub.diagnostics.converged);
        assert!(!h.hub.diagnostics.degenerate);
        assert!(close(&h.hub.scores, &[0.3383, 0.1729, 0.2798, 0.2091], 5e-4));
        assert!(close(&h.authority.scores, &[0.0965, 0.4618, 0.2854, 0.1562], 5e-4));
    }

    #[test]
    fn example_two_is_degenerate() {
        let h = hits(&samples::example2(), &HitsOptions::default()).unwrap();
        assert!(h.hub.diagnostics.degenerate);
        assert!(close(&h.hub.scores, &[0.0, 0.5, 0.25, 0.25], 5e-4));
        assert!(close(&h.authority.scores, &[1.0 / 3.0, 1.0 / 3.0, 0.0, 1.0 / 3.0], 5e-4));
    }

    #[test]
    fn example_three_tables() {
        let h = hits(&samples::example3(), &HitsOptions::default()).unwrap();
        assert!(close(&h.hub.scores, &[0.0, 0.125, 0.125, 0.125, 0.125, 0.5], 1e-9));
        assert!(close(&h.authority.scores, &[0.2, 0.2, 0.2, 0.2, 0.2, 0.0], 1e-9));
    }

    #[test]
    fn given_start_vector_is_used() {
        let opts = HitsOptions { init: HitsInit::Given(vec![0.0, 1.0, 0.0, 0.0]), ..HitsOptions::default() };
        let h = hits(&samples::example2(), &opts).unwrap();
        assert!(close(&h.authority.scores, &[0.0, 1.0, 0.0, 0.0], 1e-12));
        let bad = HitsOptions { init: HitsInit::Given(vec![1.0]), ..HitsOptions::default() };
        assert!(hits(&samples::example2(), &bad).is_err());
    }

    #[test]
    fn edgeless_graph_is_rejected() {
        assert!(hits(&samples::edgeless(3), &HitsOptions::default()).is_err());
    }
}
