//! Orthonormal classical polynomials at complex arguments.
//!
//! Every family is evaluated from its three-term recurrence
//!
//! ```text
//! x φ_k(x) = b_{k+1} φ_{k+1}(x) + a_k φ_k(x) + b_k φ_{k-1}(x),   φ_0 = μ₀^{-1/2}
//! ```
//!
//! where μ₀ is the total mass of the weight. Signs follow the standard
//! polynomials, so `StandardPoly_k = standard_scale(k) · φ_k` with a positive
//! scale; for Laguerre this means φ_k has leading coefficient of sign (-1)^k.

use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::specfun::lgamma;
use crate::{Error, Result};

/// Largest degree evaluated by forward recurrence.
pub const MAX_DEGREE: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Hermite,
    Laguerre,
    Jacobi,
    Gegenbauer,
    ChebyshevT,
}

/// A classical orthogonal family with its parameters.
///
/// * Hermite: weight `e^{-x²}` on ℝ.
/// * Laguerre(ν), ν > -1: weight `x^ν e^{-x}` on (0, ∞).
/// * Jacobi(α, β), α, β > -1: weight `(1-x)^α (1+x)^β` on (-1, 1).
/// * Gegenbauer(λ), λ ≥ 0: Jacobi(λ - 1/2, λ - 1/2).
/// * ChebyshevT: Gegenbauer(0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilySpec {
    Hermite,
    Laguerre { nu: f64 },
    Jacobi { alpha: f64, beta: f64 },
    Gegenbauer { lambda: f64 },
    ChebyshevT,
}

impl FamilySpec {
    pub fn laguerre(nu: f64) -> Result<Self> {
        let f = FamilySpec::Laguerre { nu };
        f.validate()?;
        Ok(f)
    }

    pub fn jacobi(alpha: f64, beta: f64) -> Result<Self> {
        let f = FamilySpec::Jacobi { alpha, beta };
        f.validate()?;
        Ok(f)
    }

    pub fn gegenbauer(lambda: f64) -> Result<Self> {
        let f = FamilySpec::Gegenbauer { lambda };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilySpec::Laguerre { nu } if !(nu > -1.0) || !nu.is_finite() => {
                Err(Error::InvalidParameter("Laguerre requires nu > -1"))
            }
            FamilySpec::Jacobi { alpha, beta }
                if !(alpha > -1.0 && beta > -1.0) || !(alpha + beta).is_finite() =>
            {
                Err(Error::InvalidParameter("Jacobi requires alpha, beta > -1"))
            }
            FamilySpec::Gegenbauer { lambda } if !(lambda >= 0.0) || !lambda.is_finite() => {
                Err(Error::InvalidParameter("Gegenbauer requires lambda >= 0"))
            }
            _ => Ok(()),
        }
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::Hermite => FamilyKind::Hermite,
            FamilySpec::Laguerre { .. } => FamilyKind::Laguerre,
            FamilySpec::Jacobi { .. } => FamilyKind::Jacobi,
            FamilySpec::Gegenbauer { .. } => FamilyKind::Gegenbauer,
            FamilySpec::ChebyshevT => FamilyKind::ChebyshevT,
        }
    }

    /// `(α, β)` for the families living on (-1, 1).
    pub fn jacobi_parameters(&self) -> Option<(f64, f64)> {
        match *self {
            FamilySpec::Jacobi { alpha, beta } => Some((alpha, beta)),
            FamilySpec::Gegenbauer { lambda } => Some((lambda - 0.5, lambda - 0.5)),
            FamilySpec::ChebyshevT => Some((-0.5, -0.5)),
            _ => None,
        }
    }

    /// ln μ₀, the logarithm of the total mass of the weight.
    pub fn ln_total_mass(&self) -> f64 {
        match *self {
            FamilySpec::Hermite => 0.5 * PI.ln(),
            FamilySpec::Laguerre { nu } => lgamma(nu + 1.0),
            FamilySpec::ChebyshevT | FamilySpec::Gegenbauer { lambda: 0.0 } => PI.ln(),
            _ => {
                let (a, b) = self.jacobi_parameters().unwrap_or((0.0, 0.0));
                ln_tau_jacobi(a, b)
            }
        }
    }

    /// μ₀: √π, Γ(ν+1) or τ(α, β).
    pub fn total_mass(&self) -> f64 {
        self.ln_total_mass().exp()
    }
}

/// ln τ(α, β) with τ(α, β) = 2^{α+β+1} Γ(α+1) Γ(β+1) / Γ(α+β+2).
pub fn ln_tau_jacobi(alpha: f64, beta: f64) -> f64 {
    (alpha + beta + 1.0) * LN_2 + lgamma(alpha + 1.0) + lgamma(beta + 1.0)
        - lgamma(alpha + beta + 2.0)
}

/// Recurrence coefficients `(a_k, b_k)` of the orthonormal family; `b_0 = 0`.
pub fn recurrence_coeffs(family: FamilySpec, k: usize) -> (f64, f64) {
    let kf = k as f64;
    match family {
        FamilySpec::Hermite => (0.0, (0.5 * kf).sqrt()),
        FamilySpec::Laguerre { nu } => (2.0 * kf + nu + 1.0, (kf * (kf + nu)).sqrt()),
        FamilySpec::ChebyshevT => chebyshev_coeffs(k),
        FamilySpec::Gegenbauer { lambda } => {
            if lambda == 0.0 {
                return chebyshev_coeffs(k);
            }
            let b = match k {
                0 => 0.0,
                1 => 1.0 / (2.0 * (1.0 + lambda)).sqrt(),
                _ => {
                    0.5 * (kf * (kf + 2.0 * lambda - 1.0) / ((kf + lambda) * (kf + lambda - 1.0)))
                        .sqrt()
                }
            };
            (0.0, b)
        }
        FamilySpec::Jacobi { alpha, beta } => jacobi_coeffs(alpha, beta, k),
    }
}

fn chebyshev_coeffs(k: usize) -> (f64, f64) {
    match k {
        0 => (0.0, 0.0),
        1 => (0.0, core::f64::consts::FRAC_1_SQRT_2),
        _ => (0.0, 0.5),
    }
}

fn jacobi_coeffs(alpha: f64, beta: f64, k: usize) -> (f64, f64) {
    let kf = k as f64;
    let s = alpha + beta;
    let a = if k == 0 {
        (beta - alpha) / (s + 2.0)
    } else {
        (beta * beta - alpha * alpha) / ((2.0 * kf + s) * (2.0 * kf + s + 2.0))
    };
    let b = match k {
        0 => 0.0,
        // the general formula is 0/0 at α + β = -1
        1 => (4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + s) * (2.0 + s) * (3.0 + s))).sqrt(),
        _ => {
            let n = 2.0 * kf + s;
            2.0 / n * (kf * (kf + alpha) * (kf + beta) * (kf + s) / ((n - 1.0) * (n + 1.0))).sqrt()
        }
    };
    (a, b)
}

/// φ_0, …, φ_{k_max} at `z`.
pub fn eval_all(family: FamilySpec, k_max: usize, z: Complex64) -> Result<Vec<Complex64>> {
    family.validate()?;
    if k_max > MAX_DEGREE {
        return Err(Error::InvalidParameter(
            "degree exceeds the recurrence limit of 200",
        ));
    }
    let mut out = Vec::with_capacity(k_max + 1);
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new((-0.5 * family.ln_total_mass()).exp(), 0.0);
    out.push(cur);
    for k in 0..k_max {
        let (a_k, b_k) = recurrence_coeffs(family, k);
        let (_, b_next) = recurrence_coeffs(family, k + 1);
        let next = ((z - a_k) * cur - prev * b_k) / b_next;
        if !(next.re.is_finite() && next.im.is_finite()) {
            return Err(Error::Overflow);
        }
        prev = cur;
        cur = next;
        out.push(cur);
    }
    if family.kind() == FamilyKind::Laguerre {
        for v in out.iter_mut().skip(1).step_by(2) {
            *v = -*v;
        }
    }
    Ok(out)
}

/// The orthonormal polynomial φ_k at `z`.
pub fn eval_orthonormal(family: FamilySpec, k: usize, z: Complex64) -> Result<Complex64> {
    Ok(eval_all(family, k, z)?[k])
}

/// ln of [`standard_scale`].
pub fn ln_standard_scale(family: FamilySpec, k: usize) -> Result<f64> {
    family.validate()?;
    let kf = k as f64;
    let ln_sq = match family {
        FamilySpec::Hermite => kf * LN_2 + lgamma(kf + 1.0) + 0.5 * PI.ln(),
        FamilySpec::Laguerre { nu } => lgamma(kf + nu + 1.0) - lgamma(kf + 1.0),
        FamilySpec::ChebyshevT | FamilySpec::Gegenbauer { lambda: 0.0 } => {
            if k == 0 {
                PI.ln()
            } else {
                (0.5 * PI).ln()
            }
        }
        FamilySpec::Gegenbauer { lambda } => {
            // ‖C_k^λ‖² = π 2^{1-2λ} Γ(k+2λ) / ((k+λ) k! Γ(λ)²)
            PI.ln() + (1.0 - 2.0 * lambda) * LN_2 + lgamma(kf + 2.0 * lambda)
                - (kf + lambda).ln()
                - lgamma(kf + 1.0)
                - 2.0 * lgamma(lambda)
        }
        FamilySpec::Jacobi { alpha, beta } => {
            if k == 0 {
                ln_tau_jacobi(alpha, beta)
            } else {
                let s = alpha + beta;
                (s + 1.0) * LN_2 - (2.0 * kf + s + 1.0).ln()
                    + lgamma(kf + alpha + 1.0)
                    + lgamma(kf + beta + 1.0)
                    - lgamma(kf + s + 1.0)
                    - lgamma(kf + 1.0)
            }
        }
    };
    Ok(0.5 * ln_sq)
}

/// `c_k` with `StandardPoly_k = c_k φ_k`: the L²-norm of the standard
/// polynomial (H_k, L_k^ν, P_k^{(α,β)}, C_k^λ or T_k).
pub fn standard_scale(family: FamilySpec, k: usize) -> Result<f64> {
    Ok(ln_standard_scale(family, k)?.exp())
}
