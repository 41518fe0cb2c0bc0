use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::legendre_rule;
use crate::specfun::{bessel_k_scaled, lgamma};
use crate::sum::pairwise_complex;
use crate::{Error, Result};

/// Relative tail estimate above which a planar integral carries a warning.
pub const TAIL_WARNING: f64 = 1e-12;

/// Largest θ accepted for the Bessel-weighted integrals.
pub const LAGUERRE_THETA_MAX: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanarScheme {
    /// Gauss–Legendre per axis on a rectangle.
    CartesianTensor,
    /// Gauss–Legendre in radius times the trapezoid rule in angle.
    PolarTensor,
}

/// Area weights on ℂ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlanarWeight {
    /// `exp[-2((Re z)²/(θ+1) + (Im z)²/(θ-1))]`.
    HermiteTheta { theta: f64 },
    /// `e^{2 Re z/(θ-1)} |z|^ν K_ν(2√θ |z|/(θ-1))`.
    LaguerreTheta { theta: f64, nu: f64 },
}

impl PlanarWeight {
    fn theta(&self) -> f64 {
        match *self {
            PlanarWeight::HermiteTheta { theta } | PlanarWeight::LaguerreTheta { theta, .. } => {
                theta
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let theta = self.theta();
        if !(theta > 1.0) || !theta.is_finite() {
            return Err(Error::InvalidParameter("planar weight requires theta > 1"));
        }
        if let PlanarWeight::LaguerreTheta { nu, .. } = *self {
            if !(nu > -1.0) {
                return Err(Error::InvalidParameter("Laguerre weight requires nu > -1"));
            }
            if theta > LAGUERRE_THETA_MAX {
                return Err(Error::InvalidParameter(
                    "Laguerre weight requires theta <= 8",
                ));
            }
        }
        Ok(())
    }

    /// ln of the weight at `z`.
    pub fn ln_weight(&self, z: Complex64) -> Result<f64> {
        match *self {
            PlanarWeight::HermiteTheta { theta } => {
                Ok(-2.0 * (z.re * z.re / (theta + 1.0) + z.im * z.im / (theta - 1.0)))
            }
            PlanarWeight::LaguerreTheta { theta, nu } => {
                let r = z.norm();
                let arg = 2.0 * theta.sqrt() * r / (theta - 1.0);
                // K_ν = K_{-ν}; the scaled value absorbs e^{-arg}
                let k = bessel_k_scaled(nu.abs(), arg)?;
                Ok(2.0 * z.re / (theta - 1.0) + nu * r.ln() + k.ln() - arg)
            }
        }
    }
}

/// Discretization of a weighted area integral.
///
/// `degree` and `re_growth` describe the integrand `g` (|g(z)| grows like
/// `|z|^{2·degree} e^{re_growth · Re z}`); they set the truncation extent and
/// the tail estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarGridSpec {
    pub scheme: PlanarScheme,
    /// Half-width along the real axis (Cartesian) or radius (polar).
    pub extent: f64,
    /// Gauss–Legendre nodes per axis (Cartesian) or along the radius (polar).
    pub resolution: usize,
    /// Trapezoid nodes in angle; unused by the Cartesian scheme.
    pub angular_nodes: usize,
    pub degree: usize,
    pub re_growth: f64,
}

impl PlanarGridSpec {
    /// Cartesian grid for the Gaussian weight:
    /// `R = √((θ+1)/2) (6 + √(2k+1))`.
    pub fn hermite(theta: f64, degree: usize, resolution: usize) -> Result<Self> {
        if !(theta > 1.0) {
            return Err(Error::InvalidParameter("grid requires theta > 1"));
        }
        let extent = ((theta + 1.0) / 2.0).sqrt() * (6.0 + ((2 * degree + 1) as f64).sqrt());
        Ok(PlanarGridSpec {
            scheme: PlanarScheme::CartesianTensor,
            extent,
            resolution,
            angular_nodes: 0,
            degree,
            re_growth: 0.0,
        })
    }

    /// Polar grid for the Bessel weight: `R = (40 + 4k) / δ`, where δ is the
    /// slowest radial decay rate of weight times integrand over all directions.
    pub fn laguerre(theta: f64, degree: usize, re_growth: f64, resolution: usize) -> Result<Self> {
        if !(theta > 1.0 && theta <= LAGUERRE_THETA_MAX) {
            return Err(Error::InvalidParameter(
                "Laguerre grid requires 1 < theta <= 8",
            ));
        }
        let delta = laguerre_decay_rate(theta, re_growth);
        if !(delta > 0.0) {
            return Err(Error::Domain(
                "integrand grows faster than the weight decays",
            ));
        }
        let extent = (40.0 + 4.0 * degree as f64) / delta;
        // angular oscillation rate at the outer radius sets the trapezoid count
        let rate = (2.0 / (theta - 1.0) + re_growth).abs() * extent;
        let angular = ((80.0 * rate).sqrt() + 2.0 * degree as f64 + 32.0).ceil() as usize;
        Ok(PlanarGridSpec {
            scheme: PlanarScheme::PolarTensor,
            extent,
            resolution,
            angular_nodes: angular.div_ceil(8) * 8,
            degree,
            re_growth,
        })
    }

    /// Declares an integrand factor `e^{g·Re z}`. On the Cartesian grid this
    /// shifts the Gaussian's centre to `g(θ+1)/4`, and the extent grows by
    /// that offset.
    pub fn with_re_growth(mut self, theta: f64, re_growth: f64) -> Self {
        if self.scheme == PlanarScheme::CartesianTensor {
            self.extent += (re_growth.abs() - self.re_growth.abs()) * (theta + 1.0) / 4.0;
        }
        self.re_growth = re_growth;
        self
    }

    pub fn with_resolution(mut self, resolution: usize) -> Self {
        let scale = resolution as f64 / self.resolution.max(1) as f64;
        if self.scheme == PlanarScheme::PolarTensor {
            self.angular_nodes = ((self.angular_nodes as f64 * scale).ceil() as usize).max(8);
        }
        self.resolution = resolution;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.extent > 0.0) || !self.extent.is_finite() {
            return Err(Error::InvalidParameter("grid extent must be positive"));
        }
        if self.resolution == 0 || self.resolution > super::MAX_RULE_ORDER {
            return Err(Error::InvalidParameter(
                "grid resolution must lie in 1..=256",
            ));
        }
        if self.scheme == PlanarScheme::PolarTensor && self.angular_nodes < 4 {
            return Err(Error::InvalidParameter(
                "polar grid needs at least 4 angular nodes",
            ));
        }
        Ok(())
    }
}

/// Slowest decay rate of `e^{2Re z/(θ-1) - 2√θ|z|/(θ-1) + g·Re z}` along rays.
fn laguerre_decay_rate(theta: f64, re_growth: f64) -> f64 {
    (2.0 * theta.sqrt() - (2.0 + re_growth * (theta - 1.0)).abs()) / (theta - 1.0)
}

/// Result of a planar integral with its truncation diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarIntegral {
    pub value: Complex64,
    /// Estimated fraction of the integral lost outside the grid.
    pub tail_estimate: f64,
    /// `tail_estimate > TAIL_WARNING`.
    pub warning: bool,
}

/// `∫ g(z) W(z) dσ` over the truncated plane.
pub fn planar_weighted_integral<G>(
    g: G,
    weight: PlanarWeight,
    grid: PlanarGridSpec,
) -> Result<PlanarIntegral>
where
    G: Fn(Complex64) -> Complex64,
{
    planar_weighted_integral_scaled(|z| (g(z), 0.0), weight, grid)
}

/// As [`planar_weighted_integral`], with `g` returned as `(v, s)` meaning
/// `v · e^s`; the exponent is merged with the weight before exponentiating,
/// so integrands whose growth nearly cancels the weight's decay stay finite.
pub fn planar_weighted_integral_scaled<G>(
    g: G,
    weight: PlanarWeight,
    grid: PlanarGridSpec,
) -> Result<PlanarIntegral>
where
    G: Fn(Complex64) -> (Complex64, f64),
{
    let rule = planar_rule(weight, grid)?;
    let terms: Vec<Complex64> = rule
        .nodes
        .iter()
        .zip(&rule.ln_weights)
        .map(|(&z, &lw)| {
            let (v, s) = g(z);
            v * (lw + s).exp()
        })
        .collect();
    let value = pairwise_complex(&terms);
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow);
    }
    let tail_estimate = rule.tail_estimate;
    Ok(PlanarIntegral {
        value,
        tail_estimate,
        warning: tail_estimate > TAIL_WARNING,
    })
}

/// Nodes of a planar grid with the logarithm of weight times cell size.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarRule {
    pub nodes: Vec<Complex64>,
    pub ln_weights: Vec<f64>,
    pub tail_estimate: f64,
}

/// Expands a grid into nodes, so several integrands can share one pass.
pub fn planar_rule(weight: PlanarWeight, grid: PlanarGridSpec) -> Result<PlanarRule> {
    weight.validate()?;
    grid.validate()?;
    let theta = weight.theta();
    let rule = legendre_rule(grid.resolution)?;
    let mut nodes = Vec::new();
    let mut ln_weights = Vec::new();
    let tail_estimate = match grid.scheme {
        PlanarScheme::CartesianTensor => {
            let ry = grid.extent * ((theta - 1.0) / (theta + 1.0)).sqrt();
            let (xs, wx) = rule.mapped(-grid.extent, grid.extent)?;
            let (ys, wy) = rule.mapped(-ry, ry)?;
            nodes.reserve(xs.len() * ys.len());
            ln_weights.reserve(xs.len() * ys.len());
            for (x, wxi) in xs.iter().zip(&wx) {
                for (y, wyj) in ys.iter().zip(&wy) {
                    let z = Complex64::new(*x, *y);
                    nodes.push(z);
                    ln_weights.push(weight.ln_weight(z)? + (wxi * wyj).ln());
                }
            }
            let shift = grid.re_growth.abs() * (theta + 1.0) / 4.0;
            let c = (2.0 / (theta + 1.0)).sqrt();
            libm::erfc((grid.extent - shift) * c) + libm::erfc((grid.extent + shift) * c)
        }
        PlanarScheme::PolarTensor => {
            let (rs, wr) = rule.mapped(0.0, grid.extent)?;
            let n_phi = grid.angular_nodes;
            let h = 2.0 * PI / n_phi as f64;
            nodes.reserve(rs.len() * n_phi);
            ln_weights.reserve(rs.len() * n_phi);
            for (r, wri) in rs.iter().zip(&wr) {
                let ln_cell = (wri * h * r).ln();
                for j in 0..n_phi {
                    let z = Complex64::from_polar(*r, h * j as f64);
                    nodes.push(z);
                    ln_weights.push(weight.ln_weight(z)? + ln_cell);
                }
            }
            polar_tail(theta, weight, grid)
        }
    };
    Ok(PlanarRule {
        nodes,
        ln_weights,
        tail_estimate,
    })
}

/// `(δR)^p e^{-δR} / Γ(p+1)`: the share of `∫ r^p e^{-δr} dr` beyond R.
fn polar_tail(theta: f64, weight: PlanarWeight, grid: PlanarGridSpec) -> f64 {
    let nu = match weight {
        PlanarWeight::LaguerreTheta { nu, .. } => nu,
        PlanarWeight::HermiteTheta { .. } => 0.0,
    };
    let delta = laguerre_decay_rate(theta, grid.re_growth);
    if !(delta > 0.0) {
        return f64::INFINITY;
    }
    let x = delta * grid.extent;
    let p = 2.0 * grid.degree as f64 + nu.abs() + 0.5;
    (p * x.ln() - x - lgamma(p + 1.0)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gaussian_mass() {
        // ∫ exp(-2x²/(θ+1) - 2y²/(θ-1)) dσ = π √(θ²-1) / 2
        for &theta in &[1.5f64, 2.0, 4.0] {
            let grid = PlanarGridSpec::hermite(theta, 0, 96).unwrap();
            let v = planar_weighted_integral(
                |_| Complex64::new(1.0, 0.0),
                PlanarWeight::HermiteTheta { theta },
                grid,
            )
            .unwrap();
            assert_relative_eq!(
                v.value.re,
                PI * (theta * theta - 1.0).sqrt() / 2.0,
                max_relative = 1e-13
            );
            assert!(!v.warning);
        }
    }

    #[test]
    fn zero_integrand() {
        let grid = PlanarGridSpec::laguerre(2.0, 0, 0.0, 64).unwrap();
        let v = planar_weighted_integral(
            |_| Complex64::new(0.0, 0.0),
            PlanarWeight::LaguerreTheta {
                theta: 2.0,
                nu: 0.5,
            },
            grid,
        )
        .unwrap();
        assert_eq!(v.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn bessel_weight_mass() {
        // area mass of the weight equals π(θ-1)Γ(ν+1)/(2θ^{-ν/2})
        for &(theta, nu) in &[(2.0f64, 0.5f64), (3.0, 1.5)] {
            let grid = PlanarGridSpec::laguerre(theta, 0, 0.0, 128).unwrap();
            let v = planar_weighted_integral(
                |_| Complex64::new(1.0, 0.0),
                PlanarWeight::LaguerreTheta { theta, nu },
                grid,
            )
            .unwrap();
            let expected =
                PI * (theta - 1.0) * lgamma(nu + 1.0).exp() / (2.0 * theta.powf(-nu / 2.0));
            assert_relative_eq!(v.value.re, expected, max_relative = 1e-10);
            assert!(!v.warning, "{}", v.tail_estimate);
        }
    }

    #[test]
    fn laguerre_grid_rejects_runaway_growth() {
        assert!(PlanarGridSpec::laguerre(4.1, 0, -2.0, 64).is_err());
        assert!(PlanarGridSpec::laguerre(9.0, 0, 0.0, 64).is_err());
    }
}
