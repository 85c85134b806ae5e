//! Katz scores, the bipartite resolvent, and row/column sums of `e^A`.

use nalgebra::DMatrix;

use super::exponential::{quadrature_diagonal, EvaluationMode};
use super::{Diagnostics, HubAuthority, MethodInfo, ScoreVector, Side};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Orientation};
use crate::linalg::{expm_action, power_singular_pair, spectral_radius, DENSE_LIMIT};
use crate::quadrature::{spectrum_interval, SpectrumInterval};

// Relative residual target; the solution error is this times the
// conditioning of I − cA, which grows as c approaches 1/ρ(A).
const KATZ_TOL: f64 = 1e-12;
const KATZ_MAX_ITER: usize = 200_000;

/// Solves `(I − cA) y = 1` (or with `Aᵀ`) by the fixed point `y ← 1 + cAy`.
fn katz_solve(g: &DirectedGraph, c: f64, orientation: Orientation) -> Result<(Vec<f64>, usize, f64)> {
    let n = g.n();
    let mut y = vec![1.0; n];
    let mut ay = vec![0.0; n];
    for it in 1..=KATZ_MAX_ITER {
        g.spmv_into(&y, &mut ay, orientation);
        // residual of the current iterate: ‖y − cAy − 1‖∞
        let mut residual = 0.0f64;
        let mut scale = 0.0f64;
        for (yi, ai) in y.iter().zip(&ay) {
            residual = residual.max((yi - c * ai - 1.0).abs());
            scale = scale.max(yi.abs());
        }
        if residual <= KATZ_TOL * scale {
            return Ok((y, it - 1, residual));
        }
        if !residual.is_finite() {
            break;
        }
        for (yi, ai) in y.iter_mut().zip(&ay) {
            *yi = 1.0 + c * ai;
        }
    }
    Err(Error::Numerical(format!("Katz iteration with c = {c} did not converge")))
}

/// Katz hub scores `(I − cA)⁻¹ 1` and authority scores `(I − cAᵀ)⁻¹ 1`.
///
/// The default is `c = 1/(ρ(A) + 0.1)`. A given `c` must lie in
/// `(0, 1/ρ(A))`; for a nilpotent `A` any positive `c` is accepted.
pub fn katz_row_col(g: &DirectedGraph, c: Option<f64>) -> Result<HubAuthority> {
    let perron = spectral_radius(g, 1e-12, 10_000);
    let rho = perron.rho;
    let c = match c {
        None => 1.0 / (rho + 0.1),
        Some(c) => {
            let admissible = c > 0.0 && c.is_finite() && (perron.fallback || c * rho < 1.0);
            if !admissible {
                return Err(Error::InvalidParameter(format!(
                    "Katz parameter c = {c} must lie in (0, 1/ρ(A)) with ρ(A) ≈ {rho}"
                )));
            }
            c
        }
    };
    let (hub, hub_it, hub_res) = katz_solve(g, c, Orientation::Direct)?;
    let (auth, auth_it, auth_res) = katz_solve(g, c, Orientation::Transposed)?;
    let mut info = MethodInfo::new("katz").with("c", c).with("rho", rho);
    if perron.fallback {
        info = info.with("rho_is_upper_bound", 1.0);
    }
    let diag = |iterations, residual| Diagnostics {
        iterations,
        converged: true,
        residual: Some(residual),
        ..Default::default()
    };
    Ok(HubAuthority {
        hub: ScoreVector::new(info.clone(), Side::Hub, hub, diag(hub_it, hub_res))?,
        authority: ScoreVector::new(info, Side::Authority, auth, diag(auth_it, auth_res))?,
    })
}

/// Spectral enclosure for resolvent quadrature: the usual interval, pulled
/// in below the pole `1/c` when the padded `σ₁` would reach it.
pub(crate) fn resolvent_interval(g: &DirectedGraph, c: f64) -> SpectrumInterval {
    let iv = spectrum_interval(g);
    let pole = 1.0 / c;
    if iv.upper < pole {
        return iv;
    }
    let sigma1 = power_singular_pair(g, 1e-14, 20_000).sigma1;
    SpectrumInterval::symmetric(0.5 * (sigma1 + pole).min(2.0 * iv.upper))
}

fn dense_resolvent_diagonal(a: &DMatrix<f64>, c: f64) -> Result<Vec<f64>> {
    let n = a.nrows();
    let m = DMatrix::identity(n, n) - a * a.transpose() * (c * c);
    let inverse = m.cholesky().ok_or_else(|| Error::Numerical("I − c²AAᵀ is not positive definite".into()))?.inverse();
    Ok((0..n).map(|i| inverse[(i, i)]).collect())
}

/// Hub scores `diag (I − c²AAᵀ)⁻¹` and authority scores
/// `diag (I − c²AᵀA)⁻¹`, the two diagonal blocks of `(I − c𝒜)⁻¹`.
///
/// The default is `c = 0.9/σ₁`; a given `c` must lie in `(0, 1/σ₁)`.
pub fn resolvent_bipartite(g: &DirectedGraph, c: Option<f64>, mode: EvaluationMode) -> Result<HubAuthority> {
    let sigma1 = power_singular_pair(g, 1e-14, 20_000).sigma1;
    let c = match c {
        None if sigma1 > 0.0 => 0.9 / sigma1,
        None => 1.0,
        Some(c) => {
            if !(c > 0.0 && c.is_finite() && c * sigma1 < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "resolvent parameter c = {c} must lie in (0, 1/σ₁) with σ₁ ≈ {sigma1}"
                )));
            }
            c
        }
    };
    let dense = match mode {
        EvaluationMode::Dense => true,
        EvaluationMode::Quadrature => false,
        EvaluationMode::Auto => g.n() <= DENSE_LIMIT,
    };
    let info = MethodInfo::new("resolvent").with("c", c);
    if !dense {
        let f = crate::quadrature::MatrixFunction::Resolvent { c };
        return quadrature_diagonal(g, f, 64, 1e-13, info);
    }
    if g.n() > DENSE_LIMIT {
        return Err(Error::TooLarge { dim: g.n(), limit: DENSE_LIMIT });
    }
    let a = g.to_dense();
    let hub = dense_resolvent_diagonal(&a, c)?;
    let authority = dense_resolvent_diagonal(&a.transpose(), c)?;
    Ok(HubAuthority {
        hub: ScoreVector::new(info.clone(), Side::Hub, hub, Diagnostics::converged(0))?,
        authority: ScoreVector::new(info, Side::Authority, authority, Diagnostics::converged(0))?,
    })
}

/// Hub scores `e^A 1` and authority scores `e^{Aᵀ} 1`.
pub fn expa_row_col_sums(g: &DirectedGraph) -> Result<HubAuthority> {
    let ones = vec![1.0; g.n()];
    let hub = expm_action(g, &ones, Orientation::Direct)?;
    let authority = expm_action(g, &ones, Orientation::Transposed)?;
    let info = MethodInfo::new("expa-sums");
    Ok(HubAuthority {
        hub: ScoreVector::new(info.clone(), Side::Hub, hub, Diagnostics::converged(0))?,
        authority: ScoreVector::new(info, Side::Authority, authority, Diagnostics::converged(0))?,
    })
}
