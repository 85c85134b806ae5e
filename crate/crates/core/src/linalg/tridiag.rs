//! Symmetric tridiagonal matrices and their eigen-decomposition by the
//! implicit QL method.

use crate::error::{Error, Result};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Symmetric tridiagonal `J_p` with diagonal `alpha` and strictly positive
/// off-diagonal `beta`, as produced by Lanczos.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiMatrix {
    alpha: Vec<f64>,
    beta: Vec<f64>,
}

/// Gauss nodes (ascending eigenvalues) and weights (squared first
/// components of the normalized eigenvectors).
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagEigen {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl JacobiMatrix {
    pub fn new(alpha: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() || beta.len() + 1 != alpha.len() {
            return Err(Error::InvalidParameter(format!(
                "Jacobi matrix needs p >= 1 diagonal and p - 1 off-diagonal entries, got {} and {}",
                alpha.len(),
                beta.len()
            )));
        }
        if beta.iter().any(|&b| !(b > 0.0 && b.is_finite())) || alpha.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidParameter(
                "Jacobi matrix entries must be finite with positive off-diagonal".into(),
            ));
        }
        Ok(JacobiMatrix { alpha, beta })
    }

    pub(crate) fn new_unchecked(alpha: Vec<f64>, beta: Vec<f64>) -> Self {
        debug_assert_eq!(alpha.len(), beta.len() + 1);
        JacobiMatrix { alpha, beta }
    }

    pub fn order(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    /// Leading principal submatrix of order `p`.
    pub fn leading(&self, p: usize) -> JacobiMatrix {
        assert!(p >= 1 && p <= self.order());
        JacobiMatrix { alpha: self.alpha[..p].to_vec(), beta: self.beta[..p - 1].to_vec() }
    }

    /// Borders the matrix with one extra row and column.
    pub fn extended(&self, coupling: f64, diagonal: f64) -> JacobiMatrix {
        let mut alpha = self.alpha.clone();
        let mut beta = self.beta.clone();
        alpha.push(diagonal);
        beta.push(coupling);
        JacobiMatrix { alpha, beta }
    }

    /// Gauss nodes and weights (Golub-Welsch): only the first row of the
    /// eigenvector matrix is accumulated.
    pub fn eigen(&self) -> Result<TridiagEigen> {
        let (nodes, rows) = symmetric_tridiagonal_eigen(&self.alpha, &self.beta, EigenvectorRows::First)?;
        let weights = rows[0].iter().map(|z| z * z).collect();
        Ok(TridiagEigen { nodes, weights })
    }

    /// Solves `(J - shift·I) x = rhs` by elimination without pivoting.
    /// Fails when a pivot is negligible, i.e. `shift` is (numerically) an
    /// eigenvalue of a leading block.
    pub fn shifted_solve(&self, shift: f64, rhs: &[f64]) -> Result<Vec<f64>> {
        let p = self.order();
        assert_eq!(rhs.len(), p);
        let scale = self
            .alpha
            .iter()
            .map(|a| (a - shift).abs())
            .chain(self.beta.iter().copied())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        let mut diag = vec![0.0; p];
        let mut x = rhs.to_vec();
        diag[0] = self.alpha[0] - shift;
        for i in 1..p {
            if diag[i - 1].abs() <= 1e-14 * scale {
                return Err(Error::Numerical(format!("shift {shift} collides with a Ritz value")));
            }
            let factor = self.beta[i - 1] / diag[i - 1];
            diag[i] = self.alpha[i] - shift - factor * self.beta[i - 1];
            x[i] -= factor * x[i - 1];
        }
        if diag[p - 1].abs() <= 1e-14 * scale {
            return Err(Error::Numerical(format!("shift {shift} collides with a Ritz value")));
        }
        x[p - 1] /= diag[p - 1];
        for i in (0..p - 1).rev() {
            x[i] = (x[i] - self.beta[i] * x[i + 1]) / diag[i];
        }
        Ok(x)
    }
}

/// Which eigenvector rows [`symmetric_tridiagonal_eigen`] accumulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenvectorRows {
    First,
    All,
}

/// Eigenvalues (ascending) of the symmetric tridiagonal matrix with
/// diagonal `diag` and off-diagonal `off` (zeros allowed), together with
/// the requested rows of the orthonormal eigenvector matrix; column `j` of
/// the returned rows belongs to eigenvalue `j`.
pub fn symmetric_tridiagonal_eigen(
    diag: &[f64],
    off: &[f64],
    rows: EigenvectorRows,
) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let p = diag.len();
    assert!(p >= 1 && off.len() + 1 == p);
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z: Vec<Vec<f64>> = match rows {
        EigenvectorRows::First => {
            let mut r = vec![0.0; p];
            r[0] = 1.0;
            vec![r]
        }
        EigenvectorRows::All => (0..p)
            .map(|i| {
                let mut r = vec![0.0; p];
                r[i] = 1.0;
                r
            })
            .collect(),
    };

    for l in 0..p {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < p {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
                return Err(Error::Numerical("tridiagonal QL iteration did not converge".into()));
            }
            // Wilkinson-type shift from the leading 2x2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut shift) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= shift;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - shift;
                r = (d[i] - g) * s + 2.0 * c * b;
                shift = s * r;
                d[i + 1] = g + shift;
                g = c * r - b;
                for row in z.iter_mut() {
                    let t = row[i + 1];
                    row[i + 1] = s * row[i] + c * t;
                    row[i] = c * row[i] - s * t;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= shift;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]).then(a.cmp(&b)));
    let values = order.iter().map(|&k| d[k]).collect();
    let rows = z.into_iter().map(|row| order.iter().map(|&k| row[k]).collect()).collect();
    Ok((values, rows))
}
