//! Closed-form reproducing kernels and their bilinear series.
//!
//! Every kernel is called as `K(z, u)` and evaluates `K(z, ū)`; the
//! conjugation of the second point happens inside.

mod checks;
mod series;

pub use checks::{
    alpha_max, factorization_residual, gamma_k_eval, gegenbauer_reduction_residual,
    hatk_ratio_limit, hatk_ratio_scan, jacobi_ratio_scan, FactorKind, RatioScan,
};
pub use series::{gram_matrix, gram_min_eig, kernel_series, KernelSeriesValue};

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::orthopoly::{ln_tau_jacobi, FamilySpec};
use crate::specfun::{
    appell_f4, appell_f4_guard, besseli_entire, gauss_2f1, lgamma, SeriesControl,
};
use crate::{Error, Result};

/// The ellipse `E_θ = {z : |z-1| + |z+1| < √θ + 1/√θ}` with foci ±1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseDomain {
    pub theta: f64,
}

impl EllipseDomain {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 1.0) || !theta.is_finite() {
            return Err(Error::InvalidParameter("ellipse requires theta > 1"));
        }
        Ok(EllipseDomain { theta })
    }

    /// `√θ + 1/√θ`, the sum of focal distances on the boundary.
    pub fn focal_sum(&self) -> f64 {
        let r = self.theta.sqrt();
        r + r.recip()
    }

    pub fn semi_major(&self) -> f64 {
        0.5 * self.focal_sum()
    }

    pub fn semi_minor(&self) -> f64 {
        let r = self.theta.sqrt();
        0.5 * (r - r.recip())
    }

    /// `|z-1| + |z+1| - (√θ + 1/√θ)`: negative inside, zero on the boundary.
    pub fn boundary_residual(&self, z: Complex64) -> f64 {
        (z - 1.0).norm() + (z + 1.0).norm() - self.focal_sum()
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.boundary_residual(z) < 0.0
    }

    /// Boundary point `(w + 1/w)/2` with `w = √θ e^{iφ}`.
    pub fn boundary_point(&self, phi: f64) -> Complex64 {
        let w = Complex64::from_polar(self.theta.sqrt(), phi);
        (w + w.inv()) * 0.5
    }

    /// The ellipse `E_{θ'}` with `ρ' = √θ'` equal to `ρ^s`; `s ∈ (0, 1)`
    /// gives a confocal ellipse inside this one.
    pub fn shrunk(&self, s: f64) -> Result<Self> {
        EllipseDomain::new(self.theta.powf(s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelKind {
    HermiteMehler,
    LaguerreHardyHille { nu: f64 },
    JacobiBailey { alpha: f64, beta: f64 },
    GegenbauerClosed { lambda: f64 },
    HatK { lambda: f64 },
    BergmanSelberg { lambda: f64 },
    ReducedHermite,
    ReducedLaguerre { nu: f64 },
}

/// A kernel kind at a fixed θ with the series policy used by its special
/// functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub theta: f64,
    pub ctrl: SeriesControl,
}

impl KernelSpec {
    pub fn new(kind: KernelKind, theta: f64) -> Result<Self> {
        let spec = KernelSpec {
            kind,
            theta,
            ctrl: SeriesControl::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_control(mut self, ctrl: SeriesControl) -> Result<Self> {
        ctrl.validate()?;
        self.ctrl = ctrl;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta > 1.0) || !self.theta.is_finite() {
            return Err(Error::InvalidParameter("kernel requires theta > 1"));
        }
        let ok = match self.kind {
            KernelKind::HermiteMehler | KernelKind::ReducedHermite => true,
            KernelKind::LaguerreHardyHille { nu } | KernelKind::ReducedLaguerre { nu } => nu > -1.0,
            KernelKind::JacobiBailey { alpha, beta } => alpha > -1.0 && beta > -1.0,
            KernelKind::GegenbauerClosed { lambda } => lambda >= 0.0,
            KernelKind::HatK { lambda } => lambda > -0.5,
            KernelKind::BergmanSelberg { lambda } => lambda > 0.0,
        };
        if !ok {
            return Err(Error::InvalidParameter("kernel parameter out of range"));
        }
        Ok(())
    }

    /// The orthonormal family whose bilinear series gives this kernel.
    pub fn family(&self) -> Option<FamilySpec> {
        match self.kind {
            KernelKind::HermiteMehler => Some(FamilySpec::Hermite),
            KernelKind::LaguerreHardyHille { nu } => Some(FamilySpec::Laguerre { nu }),
            KernelKind::JacobiBailey { alpha, beta } => Some(FamilySpec::Jacobi { alpha, beta }),
            KernelKind::GegenbauerClosed { lambda } => Some(FamilySpec::Gegenbauer { lambda }),
            _ => None,
        }
    }

    /// Whether `z` lies in the kernel's natural domain.
    pub fn contains(&self, z: Complex64) -> bool {
        match self.kind {
            KernelKind::HermiteMehler
            | KernelKind::ReducedHermite
            | KernelKind::LaguerreHardyHille { .. }
            | KernelKind::ReducedLaguerre { .. } => z.re.is_finite() && z.im.is_finite(),
            KernelKind::JacobiBailey { .. }
            | KernelKind::GegenbauerClosed { .. }
            | KernelKind::HatK { .. } => EllipseDomain { theta: self.theta }.contains(z),
            KernelKind::BergmanSelberg { .. } => z.norm() < bergman_radius(self.theta),
        }
    }

    /// Largest guard measure of the hypergeometric series at `(z, u)`, or 0
    /// for kinds without one.
    pub fn guard_value(&self, z: Complex64, u: Complex64) -> f64 {
        let ub = u.conj();
        match self.kind {
            KernelKind::JacobiBailey { .. } => {
                let (t, s) = bailey_arguments(self.theta, z, ub);
                appell_f4_guard(t, s)
            }
            KernelKind::GegenbauerClosed { .. } | KernelKind::HatK { .. } => {
                gegenbauer_argument(self.theta, z, ub).1.norm()
            }
            _ => 0.0,
        }
    }
}

/// Radius `√((θ²+1)/(2θ))` of the Bergman–Selberg disk.
pub fn bergman_radius(theta: f64) -> f64 {
    ((theta * theta + 1.0) / (2.0 * theta)).sqrt()
}

/// `τ(α, β) = 2^{α+β+1} Γ(α+1) Γ(β+1) / Γ(α+β+2)`.
pub fn tau_jacobi(alpha: f64, beta: f64) -> f64 {
    ln_tau_jacobi(alpha, beta).exp()
}

/// `τ(λ) = √π Γ(λ+1/2) / Γ(λ+1)`, equal to `τ(λ-1/2, λ-1/2)`.
pub fn tau_gegenbauer(lambda: f64) -> f64 {
    (0.5 * PI.ln() + lgamma(lambda + 0.5) - lgamma(lambda + 1.0)).exp()
}

/// `h = π θ^{2λ} / (τ(λ) (θ²+1)^λ)`.
pub fn h_bergman(lambda: f64, theta: f64) -> f64 {
    (PI.ln() + 2.0 * lambda * theta.ln() - lambda * (theta * theta + 1.0).ln()).exp()
        / tau_gegenbauer(lambda)
}

/// Normalising constants shared by the Jacobi-type kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConstants {
    pub tau_jacobi: f64,
    pub tau_gegen: f64,
    pub h: f64,
}

impl KernelConstants {
    pub fn new(theta: f64, alpha: f64, beta: f64, lambda: f64) -> Self {
        KernelConstants {
            tau_jacobi: tau_jacobi(alpha, beta),
            tau_gegen: tau_gegenbauer(lambda),
            h: h_bergman(lambda, theta),
        }
    }
}

/// F4 arguments `θ(1∓z)(1∓ū)/(θ+1)²` of the Bailey kernel.
fn bailey_arguments(theta: f64, z: Complex64, ub: Complex64) -> (Complex64, Complex64) {
    let c = theta / ((theta + 1.0) * (theta + 1.0));
    ((1.0 - z) * (1.0 - ub) * c, (1.0 + z) * (1.0 + ub) * c)
}

/// `D = θ² + 1 - 2θzū` and the 2F1 argument `4θ²(1-z²)(1-ū²)/D²`.
fn gegenbauer_argument(theta: f64, z: Complex64, ub: Complex64) -> (Complex64, Complex64) {
    let d = Complex64::new(theta * theta + 1.0, 0.0) - z * ub * (2.0 * theta);
    let x = (1.0 - z * z) * (1.0 - ub * ub) * (4.0 * theta * theta) / (d * d);
    (d, x)
}

/// `2F1((λ+1)/2, (λ+2)/2; λ+1/2; X)`.
fn gegenbauer_hyp(lambda: f64, x: Complex64, ctrl: SeriesControl) -> Result<Complex64> {
    gauss_2f1(
        0.5 * (lambda + 1.0),
        0.5 * (lambda + 2.0),
        lambda + 0.5,
        x,
        ctrl,
    )
}

/// Closed-form `K(z, ū)`.
///
/// * Mehler: `θ/√(π(θ²-1)) exp((2zūθ - z² - ū²)/(θ²-1))`.
/// * Hardy–Hille: `(θ/(θ-1))^{ν+1} e^{-(z+ū)/(θ-1)} E_ν(θzū/(θ-1)²)`.
/// * Bailey: `θ^{α+β+1}(θ-1) / (τ(α,β)(θ+1)^{α+β+2})
///   F4((α+β)/2+1, (α+β+3)/2; α+1, β+1; t, s)` with
///   `t = θ(1-z)(1-ū)/(θ+1)²`, `s = θ(1+z)(1+ū)/(θ+1)²`.
/// * Gegenbauer: `θ^{2λ}(θ²-1) / (τ(λ) D^{λ+1}) 2F1((λ+1)/2, (λ+2)/2; λ+1/2; X)`.
/// * HatK: `(θ²-1)/(π D) 2F1(same)`.
/// * Bergman–Selberg: `h / (1 - 2θzū/(θ²+1))^λ`.
/// * Reduced kernels: Mehler and Hardy–Hille without the factor `s(z) conj(s(u))`.
///
/// Non-integer powers of `D` and `1 - czū` use the principal branch, which is
/// continuous on the domains because both stay in the right half-plane.
pub fn kernel_closed(spec: &KernelSpec, z: Complex64, u: Complex64) -> Result<Complex64> {
    spec.validate()?;
    if !spec.contains(z) || !spec.contains(u) {
        return Err(Error::OutsideDomain);
    }
    let theta = spec.theta;
    let ub = u.conj();
    match spec.kind {
        KernelKind::HermiteMehler => {
            let q = theta * theta - 1.0;
            let e = (z * ub * (2.0 * theta) - z * z - ub * ub) / q;
            Ok(e.exp() * (theta / (PI * q).sqrt()))
        }
        KernelKind::ReducedHermite => {
            let q = theta * theta - 1.0;
            Ok((z * ub * (2.0 * theta / q)).exp() * (theta / (PI * q).sqrt()))
        }
        KernelKind::LaguerreHardyHille { nu } => {
            let w = z * ub * (theta / ((theta - 1.0) * (theta - 1.0)));
            let e = besseli_entire(nu, w, spec.ctrl)?;
            let pre = ((nu + 1.0) * (theta / (theta - 1.0)).ln()).exp();
            Ok(e * (-(z + ub) / (theta - 1.0)).exp() * pre)
        }
        KernelKind::ReducedLaguerre { nu } => {
            let w = z * ub * (theta / ((theta - 1.0) * (theta - 1.0)));
            let e = besseli_entire(nu, w, spec.ctrl)?;
            Ok(e * ((nu + 1.0) * (theta / (theta - 1.0)).ln()).exp())
        }
        KernelKind::JacobiBailey { alpha, beta } => {
            let (t, s) = bailey_arguments(theta, z, ub);
            let ab = alpha + beta;
            let f = appell_f4(
                0.5 * ab + 1.0,
                0.5 * (ab + 3.0),
                alpha + 1.0,
                beta + 1.0,
                t,
                s,
                spec.ctrl,
            )?;
            let ln_pre = (ab + 1.0) * theta.ln() + (theta - 1.0).ln()
                - ln_tau_jacobi(alpha, beta)
                - (ab + 2.0) * (theta + 1.0).ln();
            Ok(f * ln_pre.exp())
        }
        KernelKind::GegenbauerClosed { lambda } => {
            let (d, x) = gegenbauer_argument(theta, z, ub);
            let f = gegenbauer_hyp(lambda, x, spec.ctrl)?;
            let pre = (2.0 * lambda * theta.ln() + (theta * theta - 1.0).ln()).exp()
                / tau_gegenbauer(lambda);
            Ok(f * pre / d.powf(lambda + 1.0))
        }
        KernelKind::HatK { lambda } => {
            let (d, x) = gegenbauer_argument(theta, z, ub);
            let f = gegenbauer_hyp(lambda, x, spec.ctrl)?;
            Ok(f * ((theta * theta - 1.0) / PI) / d)
        }
        KernelKind::BergmanSelberg { lambda } => {
            let c = 2.0 * theta / (theta * theta + 1.0);
            let base = 1.0 - z * ub * c;
            Ok(base.powf(-lambda) * h_bergman(lambda, theta))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ellipse_geometry() {
        let e = EllipseDomain::new(4.0).unwrap();
        assert_relative_eq!(e.semi_major(), 1.25);
        assert_relative_eq!(e.semi_minor(), 0.75);
        assert!(e.boundary_residual(c(1.25, 0.0)).abs() < 1e-15);
        assert!(e.boundary_residual(e.boundary_point(1.1)).abs() < 1e-14);
        assert!(e.contains(c(0.0, 0.7)) && !e.contains(c(0.0, 0.8)));
    }

    #[test]
    fn constants() {
        assert_relative_eq!(tau_gegenbauer(0.0), PI, max_relative = 1e-14);
        assert_relative_eq!(tau_gegenbauer(1.0), PI / 2.0, max_relative = 1e-14);
        assert_relative_eq!(
            tau_jacobi(0.5, 0.5),
            tau_gegenbauer(1.0),
            max_relative = 1e-14
        );
        let k = KernelConstants::new(2.0, 0.0, 0.0, 1.0);
        assert_relative_eq!(k.tau_jacobi, 2.0, max_relative = 1e-14);
        assert_relative_eq!(k.h, PI * 4.0 / (PI / 2.0 * 5.0), max_relative = 1e-14);
    }

    #[test]
    fn origin_values() {
        let zero = c(0.0, 0.0);
        let m = kernel_closed(
            &KernelSpec::new(KernelKind::HermiteMehler, 2.0).unwrap(),
            zero,
            zero,
        )
        .unwrap();
        assert_relative_eq!(m.re, 2.0 / (3.0 * PI).sqrt(), max_relative = 1e-15);
        let l = KernelSpec::new(KernelKind::LaguerreHardyHille { nu: 0.5 }, 2.0).unwrap();
        let v = kernel_closed(&l, zero, zero).unwrap();
        assert_relative_eq!(
            v.re,
            2f64.powf(1.5) / lgamma(1.5).exp(),
            max_relative = 1e-14
        );
        let b = KernelSpec::new(KernelKind::BergmanSelberg { lambda: 0.7 }, 3.0).unwrap();
        assert_relative_eq!(
            kernel_closed(&b, c(0.3, 0.4), zero).unwrap().re,
            h_bergman(0.7, 3.0),
            max_relative = 1e-15
        );
    }

    #[test]
    fn chebyshev_closed_form_at_origin() {
        // Σ 𝕋_k(0)² θ^{-k} = (θ²+1) / (π(θ²-1))
        let theta = 2.0;
        let g = KernelSpec::new(KernelKind::GegenbauerClosed { lambda: 0.0 }, theta).unwrap();
        let v = kernel_closed(&g, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, 5.0 / (3.0 * PI), max_relative = 1e-14);
    }

    #[test]
    fn domains_and_guards() {
        let j = KernelSpec::new(
            KernelKind::JacobiBailey {
                alpha: 0.5,
                beta: 0.5,
            },
            2.0,
        )
        .unwrap();
        assert_eq!(
            kernel_closed(&j, c(2.0, 0.0), c(0.0, 0.0)),
            Err(Error::OutsideDomain)
        );
        let near = c(1.05, 0.0);
        assert!(matches!(
            kernel_closed(&j, near, near),
            Err(Error::Guard { .. })
        ));
        assert!(KernelSpec::new(KernelKind::BergmanSelberg { lambda: 0.0 }, 2.0).is_err());
        assert!(KernelSpec::new(KernelKind::HermiteMehler, 1.0).is_err());
    }

    #[test]
    fn hermitian_symmetry() {
        let (z, u) = (c(0.3, -0.2), c(-0.1, 0.25));
        for kind in [
            KernelKind::HermiteMehler,
            KernelKind::LaguerreHardyHille { nu: 1.5 },
            KernelKind::JacobiBailey {
                alpha: 0.0,
                beta: 1.0,
            },
            KernelKind::GegenbauerClosed { lambda: 1.0 },
            KernelKind::HatK { lambda: 0.5 },
            KernelKind::BergmanSelberg { lambda: 0.5 },
        ] {
            let s = KernelSpec::new(kind, 2.5).unwrap();
            let a = kernel_closed(&s, z, u).unwrap();
            let b = kernel_closed(&s, u, z).unwrap().conj();
            assert!((a - b).norm() <= 1e-14 * a.norm(), "{kind:?}");
        }
    }
}
