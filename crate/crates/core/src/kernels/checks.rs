use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{bergman_radius, h_bergman, kernel_closed, tau_gegenbauer, KernelKind, KernelSpec};
use crate::specfun::lgamma;
use crate::{Error, Result};

/// Kernels that split as `s(z) conj(s(u)) K_red(zū)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FactorKind {
    /// `s(z) = e^{-z²/(θ²-1)}`.
    Hermite,
    /// `s(z) = e^{-z/(θ-1)}`.
    Laguerre { nu: f64 },
}

/// `|K(z,ū) - s(z) conj(s(u)) K_red(zū)| / |K(z,ū)|`.
pub fn factorization_residual(
    kind: FactorKind,
    theta: f64,
    z: Complex64,
    u: Complex64,
) -> Result<f64> {
    let (full, reduced, s): (KernelKind, KernelKind, fn(f64, Complex64) -> Complex64) = match kind {
        FactorKind::Hermite => (
            KernelKind::HermiteMehler,
            KernelKind::ReducedHermite,
            |t, z| (-(z * z) / (t * t - 1.0)).exp(),
        ),
        FactorKind::Laguerre { nu } => (
            KernelKind::LaguerreHardyHille { nu },
            KernelKind::ReducedLaguerre { nu },
            |t, z| (-z / (t - 1.0)).exp(),
        ),
    };
    let k = kernel_closed(&KernelSpec::new(full, theta)?, z, u)?;
    let r = kernel_closed(&KernelSpec::new(reduced, theta)?, z, u)?;
    let split = s(theta, z) * s(theta, u).conj() * r;
    Ok((k - split).norm() / k.norm())
}

/// Relative difference between the Bailey kernel at `α = β = λ - 1/2` and
/// the Gegenbauer closed form. Guard violations are returned as
/// [`Error::Guard`].
pub fn gegenbauer_reduction_residual(
    theta: f64,
    lambda: f64,
    z: Complex64,
    u: Complex64,
) -> Result<f64> {
    if !(lambda >= 0.0) {
        return Err(Error::InvalidParameter("reduction requires lambda >= 0"));
    }
    let a = lambda - 0.5;
    let j = kernel_closed(
        &KernelSpec::new(KernelKind::JacobiBailey { alpha: a, beta: a }, theta)?,
        z,
        u,
    )?;
    let g = kernel_closed(
        &KernelSpec::new(KernelKind::GegenbauerClosed { lambda }, theta)?,
        z,
        u,
    )?;
    Ok((j - g).norm() / g.norm())
}

/// Extremes and final value of a coefficient-ratio scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioScan {
    pub inf: f64,
    pub sup: f64,
    pub last: f64,
}

impl RatioScan {
    fn push(&mut self, r: f64) {
        self.inf = self.inf.min(r);
        self.sup = self.sup.max(r);
        self.last = r;
    }

    fn empty() -> Self {
        RatioScan {
            inf: f64::INFINITY,
            sup: f64::NEG_INFINITY,
            last: f64::NAN,
        }
    }
}

/// ln of `((λ+1)/2)_k ((λ+2)/2)_k / ((λ+1/2)_k k!)`.
fn ln_hatk_coeff(lambda: f64, k: usize) -> f64 {
    let kf = k as f64;
    let a = 0.5 * (lambda + 1.0);
    let b = 0.5 * (lambda + 2.0);
    let c = lambda + 0.5;
    lgamma(a + kf) - lgamma(a) + lgamma(b + kf) - lgamma(b) - lgamma(c + kf) + lgamma(c)
        - lgamma(kf + 1.0)
}

/// Scan of `a_k^μ / a_k^λ` for k = 0..=k_max, where `a_k^λ` are the Taylor
/// coefficients of the 2F1 in the Gegenbauer kernel.
///
/// The ratio tends to [`hatk_ratio_limit`], which is 1 only for special
/// pairs such as (λ, μ) = (0, 1).
pub fn hatk_ratio_scan(lambda: f64, mu: f64, k_max: usize) -> Result<RatioScan> {
    if !(lambda > -0.5 && mu > -0.5) {
        return Err(Error::InvalidParameter(
            "ratio scan requires lambda, mu > -1/2",
        ));
    }
    if k_max < 50 {
        return Err(Error::InvalidParameter("ratio scan requires k_max >= 50"));
    }
    let mut scan = RatioScan::empty();
    for k in 0..=k_max {
        scan.push((ln_hatk_coeff(mu, k) - ln_hatk_coeff(lambda, k)).exp());
    }
    Ok(scan)
}

/// `lim_k a_k^μ / a_k^λ = 2^{μ-λ} τ(μ) / τ(λ)`.
pub fn hatk_ratio_limit(lambda: f64, mu: f64) -> f64 {
    (mu - lambda).exp2() * tau_gegenbauer(mu) / tau_gegenbauer(lambda)
}

/// ln of `((α+β)/2+1)_{k+l} ((α+β+3)/2)_{k+l} / ((α+1)_k (β+1)_l)`; the
/// `k! l!` shared by every parameter choice is left out.
fn ln_bailey_coeff(alpha: f64, beta: f64, k: usize, l: usize) -> f64 {
    let n = (k + l) as f64;
    let a = 0.5 * (alpha + beta) + 1.0;
    let b = 0.5 * (alpha + beta + 3.0);
    lgamma(a + n) - lgamma(a) + lgamma(b + n) - lgamma(b) - lgamma(alpha + 1.0 + k as f64)
        + lgamma(alpha + 1.0)
        - lgamma(beta + 1.0 + l as f64)
        + lgamma(beta + 1.0)
}

/// Scan of `a^{α,β}_{k,l} / a^{γ,γ}_{k,l}` over `0 ≤ k, l ≤ kl_max` for the
/// F4 coefficients of the Bailey kernel. `last` is the value at
/// `k = l = kl_max`.
pub fn jacobi_ratio_scan(alpha: f64, beta: f64, gamma: f64, kl_max: usize) -> Result<RatioScan> {
    if !(alpha > -1.0 && beta > -1.0 && gamma > -1.0) {
        return Err(Error::InvalidParameter(
            "ratio scan requires alpha, beta, gamma > -1",
        ));
    }
    if gamma < alpha.max(beta) {
        return Err(Error::InvalidParameter(
            "ratio scan requires gamma >= max(alpha, beta)",
        ));
    }
    if kl_max < 50 {
        return Err(Error::InvalidParameter("ratio scan requires kl_max >= 50"));
    }
    let mut scan = RatioScan::empty();
    for k in 0..=kl_max {
        for l in 0..=kl_max {
            scan.push(
                (ln_bailey_coeff(alpha, beta, k, l) - ln_bailey_coeff(gamma, gamma, k, l)).exp(),
            );
        }
    }
    Ok(scan)
}

fn ln_gamma_k_scale(theta: f64, lambda: f64, k: usize) -> f64 {
    let kf = k as f64;
    0.5 * (h_bergman(lambda, theta).ln() + lgamma(lambda + kf) - lgamma(lambda) - lgamma(kf + 1.0))
}

/// `γ_k(z) = √h √((λ)_k / k!) (2θ/(θ²+1))^{k/2} z^k`, orthonormal in the
/// Bergman–Selberg space.
pub fn gamma_k_eval(theta: f64, lambda: f64, k: usize, z: Complex64) -> Result<Complex64> {
    if !(theta > 1.0 && lambda > 0.0) {
        return Err(Error::InvalidParameter(
            "gamma_k requires theta > 1, lambda > 0",
        ));
    }
    if !(z.norm() < bergman_radius(theta)) {
        return Err(Error::OutsideDomain);
    }
    let c = 2.0 * theta / (theta * theta + 1.0);
    let ln = ln_gamma_k_scale(theta, lambda, k) + 0.5 * k as f64 * c.ln();
    Ok(z.powu(k as u32) * ln.exp())
}

/// `max_{∂E_θ} |γ_k| = √h √((λ)_k / k!) ((θ+1)/√(2(θ²+1)))^k`, attained at
/// the ends of the major axis.
pub fn alpha_max(theta: f64, lambda: f64, k: usize) -> Result<f64> {
    if !(theta > 1.0 && lambda > 0.0) {
        return Err(Error::InvalidParameter(
            "alpha_max requires theta > 1, lambda > 0",
        ));
    }
    let q = (theta + 1.0) / (2.0 * (theta * theta + 1.0)).sqrt();
    Ok((ln_gamma_k_scale(theta, lambda, k) + k as f64 * q.ln()).exp())
}
