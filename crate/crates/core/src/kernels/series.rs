use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{kernel_closed, KernelSpec};
use crate::linalg::hermitian_min_eigenvalue;
use crate::orthopoly::{eval_all, FamilySpec};
use crate::specfun::SeriesControl;
use crate::sum::pairwise_complex;
use crate::{Error, Result};

/// Truncated bilinear series with its last term as a tail diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSeriesValue {
    pub value: Complex64,
    /// `|φ_K(z) φ_K(ū)| θ^{-K}`.
    pub last_term: f64,
}

/// `Σ_{k≤K} φ_k(z) φ_k(ū) θ^{-k}`, using `φ_k(ū) = conj φ_k(u)`.
///
/// `ctrl` is validated but the sum always runs to K: the caller owns the
/// truncation and reads `last_term`.
pub fn kernel_series(
    family: FamilySpec,
    theta: f64,
    z: Complex64,
    u: Complex64,
    k_max: usize,
    ctrl: SeriesControl,
) -> Result<KernelSeriesValue> {
    ctrl.validate()?;
    if !(theta > 1.0) || !theta.is_finite() {
        return Err(Error::InvalidParameter("kernel series requires theta > 1"));
    }
    let pz = eval_all(family, k_max, z)?;
    let pu = eval_all(family, k_max, u)?;
    let ln_theta = theta.ln();
    let terms: Vec<Complex64> = pz
        .iter()
        .zip(&pu)
        .enumerate()
        .map(|(k, (a, b))| a * b.conj() * (-(k as f64) * ln_theta).exp())
        .collect();
    let value = pairwise_complex(&terms);
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow);
    }
    Ok(KernelSeriesValue {
        value,
        last_term: terms[k_max].norm(),
    })
}

/// Row-major `G_ij = K(p_i, p̄_j)`.
pub fn gram_matrix(spec: &KernelSpec, points: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = points.len();
    let mut g = alloc::vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in i..n {
            let v = kernel_closed(spec, points[i], points[j])?;
            g[i * n + j] = v;
            g[j * n + i] = v.conj();
        }
        // the diagonal of a Hermitian matrix is real
        g[i * n + i].im = 0.0;
    }
    Ok(g)
}

/// Smallest eigenvalue of the Gram matrix at 1 to 32 points.
pub fn gram_min_eig(spec: &KernelSpec, points: &[Complex64]) -> Result<f64> {
    if points.is_empty() || points.len() > 32 {
        return Err(Error::InvalidParameter("gram matrix needs 1 to 32 points"));
    }
    let g = gram_matrix(spec, points)?;
    hermitian_min_eigenvalue(&g, points.len())
}
