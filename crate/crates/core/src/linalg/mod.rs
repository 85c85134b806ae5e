//! Numerical kernels: Lanczos, symmetric tridiagonal eigensolver, dense
//! Padé exponential, exponential action, and power iterations.

pub mod expm;
pub mod lanczos;
pub mod power;
pub mod svd;
pub mod tridiag;

use nalgebra::DMatrix;

pub use expm::{dense_expm, expm_action, DENSE_LIMIT};
pub use lanczos::{lanczos, Lanczos};
pub use power::{power_singular_pair, spectral_radius, PerronEstimate, SpectralEstimate};
pub use tridiag::{JacobiMatrix, TridiagEigen};

/// A real symmetric linear operator known only through its action.
pub trait SymmetricOperator: Sync {
    fn dim(&self) -> usize;

    /// `y ← M·x`; both slices have length [`dim`](Self::dim).
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

impl SymmetricOperator for DMatrix<f64> {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    // Independent partial sums let the compiler vectorize the loop.
    let mut acc = [0.0f64; 8];
    let (xc, yc) = (x.chunks_exact(8), y.chunks_exact(8));
    let tail: f64 = xc.remainder().iter().zip(yc.remainder()).map(|(a, b)| a * b).sum();
    for (a, b) in xc.zip(yc) {
        for l in 0..8 {
            acc[l] += a[l] * b[l];
        }
    }
    acc.iter().sum::<f64>() + tail
}

pub(crate) fn norm2(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

pub(crate) fn scale(x: &mut [f64], s: f64) {
    x.iter_mut().for_each(|v| *v *= s);
}

/// `y ← y + a·x`
pub(crate) fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += a * xi);
}
