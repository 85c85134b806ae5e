//! Dense matrix exponential (scaling and squaring with diagonal Padé
//! approximants) and the action `e^A v` of a sparse adjacency matrix.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Orientation};

/// Largest dimension accepted by the dense kernels.
pub const DENSE_LIMIT: usize = 4000;

const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE9: [f64; 10] =
    [17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0, 2162160.0, 110880.0, 3960.0, 90.0, 1.0];
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// 1-norm thresholds below which the degree-m approximant is accurate to
// unit roundoff without scaling.
const THETA3: f64 = 1.495585217958292e-2;
const THETA5: f64 = 2.53939833006323e-1;
const THETA7: f64 = 9.504178996162932e-1;
const THETA9: f64 = 2.097847961257068;
const THETA13: f64 = 5.371920351148152;

fn one_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter().map(|c| c.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// `U` and `V` of the degree-m approximant from precomputed even powers.
fn low_degree_uv(a: &DMatrix<f64>, powers: &[DMatrix<f64>], b: &[f64]) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = a.nrows();
    let ident = DMatrix::<f64>::identity(n, n);
    let mut u_inner = &ident * b[1];
    let mut v = &ident * b[0];
    for (k, pk) in powers.iter().enumerate() {
        let deg = 2 * (k + 1);
        if deg + 1 < b.len() {
            u_inner += pk * b[deg + 1];
        }
        if deg < b.len() {
            v += pk * b[deg];
        }
    }
    (a * u_inner, v)
}

/// `e^M` for a dense square matrix.
///
/// Picks the lowest Padé degree in {3, 5, 7, 9, 13} whose threshold covers
/// `‖M‖₁`; above the degree-13 threshold `M` is scaled by `2^-s` and the
/// result squared `s` times.
pub fn dense_expm(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::DimensionMismatch(format!("{} x {} matrix is not square", n, m.ncols())));
    }
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge { dim: n, limit: DENSE_LIMIT });
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("matrix has non-finite entries".into()));
    }
    if n == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let norm = one_norm(m);
    let a2 = m * m;
    let (u, v, squarings) = if norm <= THETA9 {
        let mut powers = vec![a2];
        let coeffs: &[f64] = if norm <= THETA3 {
            &PADE3
        } else if norm <= THETA5 {
            powers.push(&powers[0] * &powers[0]);
            &PADE5
        } else {
            powers.push(&powers[0] * &powers[0]);
            powers.push(&powers[1] * &powers[0]);
            if norm <= THETA7 {
                &PADE7
            } else {
                powers.push(&powers[1] * &powers[1]);
                &PADE9
            }
        };
        let (u, v) = low_degree_uv(m, &powers, coeffs);
        (u, v, 0)
    } else {
        let s = (norm / THETA13).log2().ceil().max(0.0) as i32;
        let factor = 2f64.powi(-s);
        let a = m * factor;
        let a2 = a2 * (factor * factor);
        let a4 = &a2 * &a2;
        let a6 = &a4 * &a2;
        let b = &PADE13;
        let ident = DMatrix::<f64>::identity(n, n);
        let u_tail = &a6 * b[13] + &a4 * b[11] + &a2 * b[9];
        let u_inner = &a6 * u_tail + &a6 * b[7] + &a4 * b[5] + &a2 * b[3] + &ident * b[1];
        let u = &a * u_inner;
        let v_tail = &a6 * b[12] + &a4 * b[10] + &a2 * b[8];
        let v = &a6 * v_tail + &a6 * b[6] + &a4 * b[4] + &a2 * b[2] + &ident * b[0];
        (u, v, s)
    };
    let numerator = &v + &u;
    let denominator = v - u;
    let mut result =
        denominator.lu().solve(&numerator).ok_or_else(|| Error::Numerical("singular Padé denominator".into()))?;
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}

/// `e^A v` (or `e^{Aᵀ} v`) using sparse products only.
///
/// The action is split into `s = ⌈‖A‖₁⌉` steps of `e^{A/s}`, each evaluated
/// by a Taylor series truncated once two consecutive terms fall below
/// `1e-16` of the partial sum.
pub fn expm_action(g: &DirectedGraph, v: &[f64], orientation: Orientation) -> Result<Vec<f64>> {
    if v.len() != g.n() {
        return Err(Error::DimensionMismatch(format!("vector of length {} for a graph with {} nodes", v.len(), g.n())));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("vector has non-finite entries".into()));
    }
    let n = g.n();
    // ‖A‖₁ is the largest column sum of A, i.e. the largest weighted in-degree.
    let norm = (0..n)
        .map(|i| match orientation {
            Orientation::Direct => g.in_strength(i),
            Orientation::Transposed => g.out_strength(i),
        })
        .fold(0.0, f64::max);
    let steps = norm.ceil().max(1.0) as usize;
    let inv_steps = 1.0 / steps as f64;
    let inf_norm = |x: &[f64]| x.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let mut current = v.to_vec();
    let mut term = vec![0.0; n];
    let mut next = vec![0.0; n];
    for _ in 0..steps {
        term.copy_from_slice(&current);
        let mut small_run = 0;
        for k in 1..=200 {
            g.spmv_into(&term, &mut next, orientation);
            let factor = inv_steps / k as f64;
            for (t, x) in term.iter_mut().zip(&next) {
                *t = x * factor;
            }
            for (c, t) in current.iter_mut().zip(&term) {
                *c += t;
            }
            let size = inf_norm(&term);
            if size == 0.0 {
                break;
            }
            if size <= 1e-16 * inf_norm(&current) {
                small_run += 1;
                if small_run == 2 {
                    break;
                }
            } else {
                small_run = 0;
            }
        }
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn factorial(k: usize) -> f64 {
        (1..=k).map(|v| v as f64).product()
    }

    #[test]
    fn zero_matrix_gives_identity() {
        let e = dense_expm(&DMatrix::zeros(3, 3)).unwrap();
        assert_eq!(e, DMatrix::identity(3, 3));
    }

    #[test]
    fn directed_path_entries() {
        let a = samples::directed_path(5).to_dense();
        let e = dense_expm(&a).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expected = if j >= i { 1.0 / factorial(j - i) } else { 0.0 };
                assert!((e[(i, j)] - expected).abs() < 1e-13, "({i},{j})");
            }
        }
    }

    #[test]
    fn example_one_hub_diagonal() {
        let g = samples::example1();
        let e = dense_expm(&g.bipartite().to_dense()).unwrap();
        let hubs = [2.3319, 2.2289, 2.2812, 1.6414];
        for (i, h) in hubs.iter().enumerate() {
            assert!((e[(i, i)] - h).abs() < 5e-5);
        }
    }

    #[test]
    fn inverse_and_symmetry() {
        // Large enough norm to exercise scaling and squaring.
        let m = DMatrix::from_fn(6, 6, |r, c| ((r * 7 + c * 3) % 5) as f64 - 1.5);
        let sym = &m + m.transpose();
        let e = dense_expm(&sym).unwrap();
        let e_neg = dense_expm(&(-&sym)).unwrap();
        let prod = &e * &e_neg;
        assert!((prod - DMatrix::identity(6, 6)).abs().max() < 1e-10);
        let asym = (&e - e.transpose()).abs().max() / e.abs().max();
        assert!(asym < 1e-12);
    }

    #[test]
    fn each_pade_degree_matches_taylor() {
        let base = DMatrix::from_fn(4, 4, |r, c| if r == c { 0.0 } else { 0.25 * ((r + 2 * c) % 3) as f64 });
        for target in [0.01, 0.2, 0.9, 2.0, 5.0, 20.0] {
            let m = &base * (target / one_norm(&base));
            let e = dense_expm(&m).unwrap();
            let scaled = &m / 64.0;
            let mut taylor = DMatrix::identity(4, 4);
            let mut term = DMatrix::identity(4, 4);
            for k in 1..40 {
                term = &term * &scaled / k as f64;
                taylor += &term;
            }
            for _ in 0..6 {
                taylor = &taylor * &taylor;
            }
            let err = (&e - &taylor).abs().max() / taylor.abs().max();
            assert!(err < 1e-13, "norm {target}: {err}");
        }
    }

    #[test]
    fn rejects_oversized_and_non_square() {
        assert!(matches!(dense_expm(&DMatrix::zeros(2, 3)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn action_on_directed_path() {
        let g = samples::directed_path(4);
        let mut e1 = vec![0.0; 4];
        e1[0] = 1.0;
        assert_eq!(expm_action(&g, &e1, Orientation::Direct).unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
        let g3 = samples::directed_path(3);
        let sums = expm_action(&g3, &[1.0; 3], Orientation::Direct).unwrap();
        for (s, e) in sums.iter().zip([2.5, 2.0, 1.0]) {
            assert!((s - e).abs() < 1e-14);
        }
    }

    #[test]
    fn action_matches_dense() {
        let g = samples::example1();
        let e = dense_expm(&g.to_dense()).unwrap();
        for orientation in [Orientation::Direct, Orientation::Transposed] {
            let v = [1.0, -0.5, 2.0, 0.25];
            let got = expm_action(&g, &v, orientation).unwrap();
            let mat = match orientation {
                Orientation::Direct => e.clone(),
                Orientation::Transposed => e.transpose(),
            };
            let expected = mat * nalgebra::DVector::from_column_slice(&v);
            for (a, b) in got.iter().zip(expected.iter()) {
                assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0));
            }
        }
        assert!(expm_action(&g, &[f64::NAN, 0.0, 0.0, 0.0], Orientation::Direct).is_err());
    }
}
