use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::orthopoly::{eval_all, standard_scale, FamilySpec};
use crate::sum::pairwise_complex;
use crate::{Error, Result};

/// Boundary of `E_θ` sampled uniformly in the Zhukowskii angle.
///
/// `z(φ) = (w + 1/w)/2` with `w = √θ e^{iφ}`; the arc-length density is
/// `|dz|/dφ = |w² - 1| / (2√θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseContour {
    pub theta: f64,
    pub n_nodes: usize,
}

/// A boundary node with its arc-length density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourNode {
    pub z: Complex64,
    pub w: Complex64,
    pub arc: f64,
}

impl EllipseContour {
    pub fn new(theta: f64, n_nodes: usize) -> Result<Self> {
        let c = EllipseContour { theta, n_nodes };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta > 1.0) || !self.theta.is_finite() {
            return Err(Error::InvalidParameter("ellipse requires theta > 1"));
        }
        if self.n_nodes < 64 || !self.n_nodes.is_power_of_two() {
            return Err(Error::InvalidParameter(
                "n_nodes must be a power of two >= 64",
            ));
        }
        Ok(())
    }

    pub fn nodes(&self) -> Vec<ContourNode> {
        let r = self.theta.sqrt();
        (0..self.n_nodes)
            .map(|j| {
                let phi = 2.0 * PI * j as f64 / self.n_nodes as f64;
                let w = Complex64::from_polar(r, phi);
                let z = (w + w.inv()) * 0.5;
                let arc = (w * w - 1.0).norm() / (2.0 * r);
                ContourNode { z, w, arc }
            })
            .collect()
    }
}

/// `∮ g(z) ρ(z) |dz|` over `∂E_θ` by the trapezoid rule in φ.
pub fn ellipse_contour_integral<G, R>(g: G, contour: EllipseContour, rho: R) -> Result<Complex64>
where
    G: Fn(Complex64) -> Complex64,
    R: Fn(Complex64) -> f64,
{
    contour.validate()?;
    let h = 2.0 * PI / contour.n_nodes as f64;
    let terms: Vec<Complex64> = contour
        .nodes()
        .iter()
        .map(|n| g(n.z) * (rho(n.z) * n.arc * h))
        .collect();
    Ok(pairwise_complex(&terms))
}

/// `(1/2π) ∮ T̃_k conj(T̃_m) |z² - 1|^{-1/2} |dz|` with `T̃_k(z(w)) = w^k + w^{-k}`.
///
/// `T̃_k` is twice the standard Chebyshev polynomial and is evaluated from the
/// orthonormal recurrence, not from `w`. The exact values are 0 for k ≠ m,
/// `θ^k + θ^{-k}` for k = m ≠ 0 and 4 for k = m = 0.
pub fn chebyshev_boundary_gram(
    theta: f64,
    k: usize,
    m: usize,
    n_nodes: usize,
) -> Result<Complex64> {
    let contour = EllipseContour::new(theta, n_nodes)?;
    let top = k.max(m);
    let sk = 2.0 * standard_scale(FamilySpec::ChebyshevT, k)?;
    let sm = 2.0 * standard_scale(FamilySpec::ChebyshevT, m)?;
    let h = 1.0 / n_nodes as f64;
    let mut terms = Vec::with_capacity(n_nodes);
    for node in contour.nodes() {
        let phis = eval_all(FamilySpec::ChebyshevT, top, node.z)?;
        let tk = phis[k] * sk;
        let tm = phis[m] * sm;
        // |z² - 1|^{1/2} equals the arc density, so the weighted measure is dφ
        let rho = (node.z * node.z - 1.0).norm().sqrt().recip();
        terms.push(tk * tm.conj() * (rho * node.arc * h));
    }
    Ok(pairwise_complex(&terms))
}

/// Constant `c_k` making `c_k 𝕋_k` orthonormal in the boundary space with
/// weight `|z² - 1|^{-1/2}`, measured by quadrature.
pub fn chebyshev_orthonormalizer(theta: f64, k: usize, n_nodes: usize) -> Result<f64> {
    let contour = EllipseContour::new(theta, n_nodes)?;
    let norm2 = ellipse_contour_integral(
        |z| {
            let v = eval_all(FamilySpec::ChebyshevT, k, z)
                .map(|p| p[k])
                .unwrap_or(Complex64::new(f64::NAN, 0.0));
            Complex64::new(v.norm_sqr(), 0.0)
        },
        contour,
        |z| (z * z - 1.0).norm().sqrt().recip(),
    )?;
    if !norm2.re.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(norm2.re.sqrt().recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn contour_validation() {
        assert!(EllipseContour::new(1.0, 64).is_err());
        assert!(EllipseContour::new(2.0, 96).is_err());
        assert!(EllipseContour::new(2.0, 32).is_err());
        assert!(EllipseContour::new(2.0, 128).is_ok());
    }

    #[test]
    fn nodes_lie_on_the_ellipse() {
        let theta = 2.5f64;
        let sum = theta.sqrt() + theta.sqrt().recip();
        for n in EllipseContour::new(theta, 64).unwrap().nodes() {
            let s = (n.z - 1.0).norm() + (n.z + 1.0).norm();
            assert_relative_eq!(s, sum, max_relative = 1e-14);
        }
    }

    #[test]
    fn chebyshev_weight_gives_two_pi() {
        let c = EllipseContour::new(2.0, 128).unwrap();
        let v = ellipse_contour_integral(
            |_| Complex64::new(1.0, 0.0),
            c,
            |z| (z * z - 1.0).norm().sqrt().recip(),
        )
        .unwrap();
        assert_relative_eq!(v.re, 2.0 * PI, max_relative = 1e-14);
    }

    #[test]
    fn gram_cases() {
        assert_relative_eq!(
            chebyshev_boundary_gram(2.0, 0, 0, 128).unwrap().re,
            4.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            chebyshev_boundary_gram(2.0, 3, 3, 128).unwrap().re,
            8.125,
            max_relative = 1e-13
        );
        assert!(chebyshev_boundary_gram(2.0, 2, 5, 128).unwrap().norm() < 1e-12);
    }

    #[test]
    fn orthonormalizer_values() {
        // 𝕋_k = T̃_k / (2 · standard scale), so c_0 = 1/√2 and c_k = (θ^k + θ^{-k})^{-1/2}
        let theta = 3.0f64;
        assert_relative_eq!(
            chebyshev_orthonormalizer(theta, 0, 128).unwrap(),
            0.5f64.sqrt(),
            max_relative = 1e-13
        );
        for k in 1..6 {
            let expected = (theta.powi(k as i32) + theta.powi(-(k as i32))).powf(-0.5);
            assert_relative_eq!(
                chebyshev_orthonormalizer(theta, k, 128).unwrap(),
                expected,
                max_relative = 1e-12
            );
        }
    }
}
