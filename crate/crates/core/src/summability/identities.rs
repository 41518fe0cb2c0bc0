use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::report::{ReportFlag, ToleranceMode, VerificationReport};
use super::series::{radius_estimate, verdict, weighted_sum, CoefficientSeries, Verdict};
use crate::orthopoly::{eval_all, ln_standard_scale, FamilySpec};
use crate::quadrature::{
    fourier_coefficients, planar_rule, planar_weighted_integral_scaled, PlanarGridSpec,
    PlanarScheme, PlanarWeight, MAX_RULE_ORDER,
};
use crate::specfun::lgamma;
use crate::sum::pairwise_complex;
use crate::{Error, Result};

/// Relative tolerance of the norm identities.
pub const NORM_IDENTITY_TOL: f64 = 1e-6;

/// Both sides of `Σ |f_k|² θ^k = c ∫ |f|² W dσ` for a generating function.
#[derive(Debug, Clone, PartialEq)]
pub struct NormIdentityReport {
    /// `computed` is the coefficient sum, `expected` the planar integral.
    pub report: VerificationReport,
    /// Closed form of both sides.
    pub closed_form: f64,
    /// Verdict from the quadrature coefficients.
    pub verdict: Verdict,
    pub tail_estimate: f64,
    /// Largest gate excess `|q - a| / (1e-9|a| + 1e-13‖f‖)`; ≤ 1 passes.
    pub gate_ratio: f64,
}

/// Quadrature coefficients must satisfy `|q_k - a_k| ≤ 1e-9 |a_k| + 1e-13 ‖f‖`.
fn gate(quadrature: &CoefficientSeries, analytic: &[f64]) -> f64 {
    let norm = analytic.iter().map(|a| a * a).sum::<f64>().sqrt();
    quadrature
        .values
        .iter()
        .zip(analytic)
        .map(|(q, &a)| (q - a).norm() / (1e-9 * a.abs() + 1e-13 * norm))
        .fold(0.0, f64::max)
}

fn rule_order(k_max: usize) -> usize {
    (2 * k_max + 32).clamp(64, MAX_RULE_ORDER)
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    name: &str,
    family: FamilySpec,
    f: impl Fn(f64) -> Complex64,
    analytic: Vec<f64>,
    theta: f64,
    integral: Result<(Complex64, f64, bool)>,
    closed_form: f64,
) -> Result<NormIdentityReport> {
    let k_max = analytic.len() - 1;
    let quad = fourier_coefficients(f, family, k_max, rule_order(k_max))?;
    let gate_ratio = gate(&quad, &analytic);
    let exact = CoefficientSeries::from_values(
        family,
        analytic.iter().map(|&a| Complex64::new(a, 0.0)).collect(),
    )?;
    let sums = weighted_sum(&exact, theta, k_max)?;
    let mut flags = Vec::new();
    let v = if quad.len() >= 16 {
        let r = radius_estimate(&quad)?;
        verdict(&quad, theta, &r)?
    } else {
        Verdict::Inconclusive
    };
    match v {
        Verdict::Diverging => flags.push(ReportFlag::Diverging),
        Verdict::Inconclusive => flags.push(ReportFlag::Inconclusive),
        Verdict::Converged => {}
    }
    if sums.overflow {
        flags.push(ReportFlag::Overflow);
    }
    if gate_ratio > 1.0 {
        flags.push(ReportFlag::CoefficientGate);
    }
    let (integral, tail_estimate) = match integral {
        Ok((value, tail, warning)) => {
            if warning {
                flags.push(ReportFlag::TruncationWarning);
            }
            (value, tail)
        }
        Err(Error::Domain(_)) => {
            if !flags.contains(&ReportFlag::Diverging) {
                flags.push(ReportFlag::Diverging);
            }
            (Complex64::new(f64::NAN, 0.0), f64::INFINITY)
        }
        Err(Error::Overflow) => {
            flags.push(ReportFlag::Overflow);
            (Complex64::new(f64::NAN, 0.0), f64::INFINITY)
        }
        Err(e) => return Err(e),
    };
    let report = VerificationReport::compare(
        name,
        Complex64::new(sums.total(), 0.0),
        integral,
        NORM_IDENTITY_TOL,
        ToleranceMode::Relative,
        flags,
    );
    Ok(NormIdentityReport {
        report,
        closed_form,
        verdict: v,
        tail_estimate,
        gate_ratio,
    })
}

/// Hermite generating function `f(z) = e^{2zt - t²}` with coefficients
/// `f_k = t^k √(√π 2^k / k!)`; both sides equal `√π e^{2t²θ}`.
///
/// The sum uses the closed-form coefficients; the quadrature coefficients are
/// checked against them and feed the convergence verdict. `grid` should be a
/// Cartesian grid; its extent is widened for the shift caused by `|f|²`.
pub fn hermite_norm_identity(
    t: f64,
    theta: f64,
    grid: PlanarGridSpec,
    k_max: usize,
) -> Result<NormIdentityReport> {
    if !t.is_finite() || !(theta > 1.0) || !theta.is_finite() {
        return Err(Error::InvalidParameter(
            "hermite identity requires finite t and theta > 1",
        ));
    }
    if grid.scheme != PlanarScheme::CartesianTensor {
        return Err(Error::InvalidParameter(
            "hermite identity needs a Cartesian grid",
        ));
    }
    let ln_root_pi = 0.5 * PI.ln();
    let analytic: Vec<f64> = (0..=k_max)
        .map(|k| {
            let kf = k as f64;
            if t == 0.0 {
                return if k == 0 {
                    (0.5 * ln_root_pi).exp()
                } else {
                    0.0
                };
            }
            let mag =
                (kf * t.abs().ln() + 0.5 * (ln_root_pi + kf * 2f64.ln() - lgamma(kf + 1.0))).exp();
            if t < 0.0 && k % 2 == 1 {
                -mag
            } else {
                mag
            }
        })
        .collect();
    let weight = PlanarWeight::HermiteTheta { theta };
    let grid = grid.with_re_growth(theta, 4.0 * t);
    let prefactor = 2.0 / (PI * (theta * theta - 1.0)).sqrt();
    let integral = planar_weighted_integral_scaled(
        |z| (Complex64::new(prefactor, 0.0), 4.0 * t * z.re - 2.0 * t * t),
        weight,
        grid,
    )
    .map(|p| (p.value, p.tail_estimate, p.warning));
    let closed = PI.sqrt() * (2.0 * t * t * theta).exp();
    assemble(
        &format!("hermite_norm_identity(t={t}, theta={theta})"),
        FamilySpec::Hermite,
        |x| Complex64::new((2.0 * x * t - t * t).exp(), 0.0),
        analytic,
        theta,
        integral,
        closed,
    )
}

/// Laguerre generating function `f(z) = (1-t)^{-ν-1} e^{-zt/(1-t)}` with
/// coefficients `f_k = t^k √(Γ(k+ν+1)/k!)`; both sides equal
/// `Γ(ν+1)(1 - t²θ)^{-ν-1}` when `t²θ < 1`. Otherwise the sum diverges and
/// the report is flagged.
///
/// The polar grid is rebuilt from `grid.degree` and `grid.resolution` for the
/// integrand's growth `e^{-2t Re z/(1-t)}`.
pub fn laguerre_norm_identity(
    t: f64,
    theta: f64,
    nu: f64,
    grid: PlanarGridSpec,
    k_max: usize,
) -> Result<NormIdentityReport> {
    if !(t.abs() < 1.0) || !(theta > 1.0) || !(nu > -1.0) {
        return Err(Error::InvalidParameter(
            "laguerre identity requires |t| < 1, theta > 1, nu > -1",
        ));
    }
    let family = FamilySpec::laguerre(nu)?;
    let analytic: Vec<f64> = (0..=k_max)
        .map(|k| {
            let kf = k as f64;
            if t == 0.0 {
                return if k == 0 {
                    lgamma(nu + 1.0).exp().sqrt()
                } else {
                    0.0
                };
            }
            let mag = (kf * t.abs().ln() + 0.5 * (lgamma(kf + nu + 1.0) - lgamma(kf + 1.0))).exp();
            if t < 0.0 && k % 2 == 1 {
                -mag
            } else {
                mag
            }
        })
        .collect();
    let growth = -2.0 * t / (1.0 - t);
    let prefactor = 2.0 * theta.powf(-nu / 2.0) / (PI * (theta - 1.0));
    let ln_amp = -(2.0 * nu + 2.0) * (1.0 - t).ln();
    let integral =
        PlanarGridSpec::laguerre(theta, grid.degree, growth, grid.resolution).and_then(|g| {
            planar_weighted_integral_scaled(
                |z| (Complex64::new(prefactor, 0.0), ln_amp + growth * z.re),
                PlanarWeight::LaguerreTheta { theta, nu },
                g,
            )
            .map(|p| (p.value, p.tail_estimate, p.warning))
        });
    let x = 1.0 - t * t * theta;
    let closed = if x > 0.0 {
        (lgamma(nu + 1.0) - (nu + 1.0) * x.ln()).exp()
    } else {
        f64::INFINITY
    };
    assemble(
        &format!("laguerre_norm_identity(t={t}, theta={theta}, nu={nu})"),
        family,
        |x| {
            Complex64::new(
                ((1.0 - t).ln() * (-nu - 1.0) - x * t / (1.0 - t)).exp(),
                0.0,
            )
        },
        analytic,
        theta,
        integral,
        closed,
    )
}

/// Tolerances for [`orthogonality_matrix`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthogonalityTolerance {
    /// Relative, on diagonal entries.
    pub diagonal: f64,
    /// Off-diagonal entries must stay below this times the largest diagonal.
    pub off_diagonal: f64,
}

/// Largest degree accepted by [`orthogonality_matrix`] per weight.
pub const HERMITE_ORTHO_MAX: usize = 6;
pub const LAGUERRE_ORTHO_MAX: usize = 5;

/// Entries `c ∫ P_k conj(P_m) W dσ` for the standard polynomials `P_k`
/// (Hermite `H_k` or Laguerre `L_k^ν`), compared with
/// `π (2θ)^k k! δ_{km}` (Hermite, `c = 2/√(θ²-1)`) or
/// `Γ(k+ν+1) θ^k / k! δ_{km}` (Laguerre, `c = 2θ^{-ν/2}/(π(θ-1))`).
///
/// Returns `(k_max+1)²` reports in row-major order.
pub fn orthogonality_matrix(
    weight: PlanarWeight,
    k_max: usize,
    resolution: usize,
    tol: OrthogonalityTolerance,
) -> Result<Vec<VerificationReport>> {
    let (family, grid, prefactor, theta) = match weight {
        PlanarWeight::HermiteTheta { theta } => {
            if k_max > HERMITE_ORTHO_MAX {
                return Err(Error::InvalidParameter(
                    "hermite orthogonality is limited to k <= 6",
                ));
            }
            (
                FamilySpec::Hermite,
                PlanarGridSpec::hermite(theta, k_max, resolution)?,
                2.0 / (theta * theta - 1.0).sqrt(),
                theta,
            )
        }
        PlanarWeight::LaguerreTheta { theta, nu } => {
            if k_max > LAGUERRE_ORTHO_MAX {
                return Err(Error::InvalidParameter(
                    "laguerre orthogonality is limited to k <= 5",
                ));
            }
            (
                FamilySpec::laguerre(nu)?,
                PlanarGridSpec::laguerre(theta, k_max, 0.0, resolution)?,
                2.0 * theta.powf(-nu / 2.0) / (PI * (theta - 1.0)),
                theta,
            )
        }
    };
    let n = k_max + 1;
    let scales: Vec<f64> = (0..n)
        .map(|k| ln_standard_scale(family, k))
        .collect::<Result<_>>()?;
    let rule = planar_rule(weight, grid)?;
    let mut columns: Vec<Vec<Complex64>> = vec![Vec::with_capacity(rule.nodes.len()); n * n];
    for (&z, &lw) in rule.nodes.iter().zip(&rule.ln_weights) {
        let phi = eval_all(family, k_max, z)?;
        let p: Vec<Complex64> = phi.iter().zip(&scales).map(|(v, s)| v * s.exp()).collect();
        let w = lw.exp() * prefactor;
        for k in 0..n {
            for m in 0..n {
                columns[k * n + m].push(p[k] * p[m].conj() * w);
            }
        }
    }
    let expected_diag: Vec<f64> = (0..n)
        .map(|k| {
            let kf = k as f64;
            match weight {
                PlanarWeight::HermiteTheta { .. } => {
                    (PI.ln() + kf * (2.0 * theta).ln() + lgamma(kf + 1.0)).exp()
                }
                PlanarWeight::LaguerreTheta { nu, .. } => {
                    (lgamma(kf + nu + 1.0) + kf * theta.ln() - lgamma(kf + 1.0)).exp()
                }
            }
        })
        .collect();
    let max_diag = expected_diag.iter().copied().fold(0.0, f64::max);
    let flags = if rule.tail_estimate > crate::quadrature::TAIL_WARNING {
        vec![ReportFlag::TruncationWarning]
    } else {
        Vec::new()
    };
    let mut out = Vec::with_capacity(n * n);
    for k in 0..n {
        for m in 0..n {
            let value = pairwise_complex(&columns[k * n + m]);
            let name = format!("orthogonality({k},{m})");
            out.push(if k == m {
                VerificationReport::compare(
                    name,
                    value,
                    Complex64::new(expected_diag[k], 0.0),
                    tol.diagonal,
                    ToleranceMode::Relative,
                    flags.clone(),
                )
            } else {
                VerificationReport::compare(
                    name,
                    value,
                    Complex64::new(0.0, 0.0),
                    tol.off_diagonal * max_diag,
                    ToleranceMode::Absolute,
                    flags.clone(),
                )
            });
        }
    }
    Ok(out)
}
