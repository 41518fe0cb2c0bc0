use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::series::{radius_estimate, verdict, weighted_sum, RadiusEstimate, Verdict};
use crate::orthopoly::{FamilyKind, FamilySpec};
use crate::quadrature::{fourier_coefficients, EllipseContour, MAX_RULE_ORDER};
use crate::sum::{pairwise, pairwise_complex};
use crate::{Error, Result};

/// Largest holomorphy defect accepted as "holomorphic inside the ellipse".
pub const HOLOMORPHY_DEFECT_TOL: f64 = 1e-8;

/// Moments `∮ f zʲ dz` checked for j = 0..HOLOMORPHY_MOMENTS.
const HOLOMORPHY_MOMENTS: usize = 4;

/// Two views of membership of `f` in the space on `E_θ` for a Jacobi-type
/// family: the coefficient sum and the boundary behaviour.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub theta: f64,
    /// `Σ |f_k|² θ^k` from quadrature coefficients, up to the last index
    /// above the noise floor.
    pub weighted_sum: f64,
    pub verdict: Verdict,
    pub radius: RadiusEstimate,
    /// `∮ |f|² |dz|` over `∂E_θ`; NaN when some node is not finite.
    pub boundary_norm: f64,
    /// Node indices where `f` was not finite.
    pub failed_nodes: Vec<usize>,
    /// `max_j |∮ f zʲ dz| / ∮ |f| |z|ʲ |dz|`; zero up to rounding when `f`
    /// is holomorphic on the closed ellipse.
    pub holomorphy_defect: f64,
    /// Boundary view: finite on `∂E_θ` and holomorphic inside.
    pub boundary_member: bool,
    /// Sum view: the weighted sum converges.
    pub sum_member: bool,
    /// The two views give the same answer.
    pub agree: bool,
    /// `weighted_sum / boundary_norm` when both are finite.
    pub norm_ratio: f64,
}

/// Membership of `f` at one θ using `k_max + 1` coefficients and an
/// `n_nodes`-point boundary rule.
///
/// Only Jacobi-type families (Jacobi, Gegenbauer, Chebyshev) are accepted.
pub fn jacobi_membership_report<F>(
    f: F,
    family: FamilySpec,
    theta: f64,
    k_max: usize,
    n_nodes: usize,
) -> Result<MembershipReport>
where
    F: Fn(Complex64) -> Complex64,
{
    match family.kind() {
        FamilyKind::Hermite | FamilyKind::Laguerre => {
            return Err(Error::InvalidParameter(
                "membership report needs a Jacobi-type family",
            ));
        }
        _ => {}
    }
    let contour = EllipseContour::new(theta, n_nodes)?;
    let order = (2 * k_max + 32).min(MAX_RULE_ORDER);
    let coeffs = fourier_coefficients(|x| f(Complex64::new(x, 0.0)), family, k_max, order)?;
    let radius = radius_estimate(&coeffs)?;
    let v = verdict(&coeffs, theta, &radius)?;
    let sums = weighted_sum(&coeffs, theta, k_max)?;
    // unresolved coefficients are rounding noise, which θ^k would amplify
    let k_last = coeffs.resolvable().last().copied().unwrap_or(0);
    let total = if sums.overflow {
        f64::INFINITY
    } else {
        sums.partial_sums[k_last]
    };

    let h = 2.0 * PI / n_nodes as f64;
    let mut failed_nodes = Vec::new();
    let mut norm_terms = Vec::with_capacity(n_nodes);
    let mut moment_terms: Vec<Vec<Complex64>> = (0..HOLOMORPHY_MOMENTS)
        .map(|_| Vec::with_capacity(n_nodes))
        .collect();
    let mut scale_terms: Vec<Vec<f64>> = (0..HOLOMORPHY_MOMENTS)
        .map(|_| Vec::with_capacity(n_nodes))
        .collect();
    for (j, node) in contour.nodes().iter().enumerate() {
        let fz = f(node.z);
        if !(fz.re.is_finite() && fz.im.is_finite()) {
            failed_nodes.push(j);
            continue;
        }
        norm_terms.push(fz.norm_sqr() * node.arc * h);
        // dz/dφ = i (w - 1/w) / 2
        let dz = Complex64::new(0.0, 0.5) * (node.w - node.w.inv()) * h;
        let mut zp = Complex64::new(1.0, 0.0);
        for m in 0..HOLOMORPHY_MOMENTS {
            moment_terms[m].push(fz * zp * dz);
            scale_terms[m].push(fz.norm() * zp.norm() * dz.norm());
            zp *= node.z;
        }
    }
    let (boundary_norm, holomorphy_defect) = if failed_nodes.is_empty() {
        let defect = moment_terms
            .iter()
            .zip(&scale_terms)
            .map(|(m, s)| {
                let denom = pairwise(s);
                if denom > 0.0 {
                    pairwise_complex(m).norm() / denom
                } else {
                    0.0
                }
            })
            .fold(0.0, f64::max);
        (pairwise(&norm_terms), defect)
    } else {
        (f64::NAN, f64::NAN)
    };
    let boundary_member = failed_nodes.is_empty()
        && boundary_norm.is_finite()
        && holomorphy_defect <= HOLOMORPHY_DEFECT_TOL;
    let sum_member = v == Verdict::Converged;
    let agree = boundary_member == sum_member && v != Verdict::Inconclusive;
    let norm_ratio = if total.is_finite() && boundary_norm.is_finite() && boundary_norm > 0.0 {
        total / boundary_norm
    } else {
        f64::NAN
    };
    Ok(MembershipReport {
        theta,
        weighted_sum: total,
        verdict: v,
        radius,
        boundary_norm,
        failed_nodes,
        holomorphy_defect,
        boundary_member,
        sum_member,
        agree,
        norm_ratio,
    })
}

/// [`jacobi_membership_report`] over several θ.
pub fn jacobi_theta_sweep<F>(
    f: F,
    family: FamilySpec,
    thetas: &[f64],
    k_max: usize,
    n_nodes: usize,
) -> Result<Vec<MembershipReport>>
where
    F: Fn(Complex64) -> Complex64,
{
    thetas
        .iter()
        .map(|&t| jacobi_membership_report(&f, family, t, k_max, n_nodes))
        .collect()
}
