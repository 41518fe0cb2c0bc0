//! Integration machinery.
//!
//! * Gauss rules for every family by Golub–Welsch ([`gauss_rule`]) and the
//!   coefficient extraction built on them ([`fourier_coefficients`]).
//! * Weighted area integrals over ℂ ([`planar_weighted_integral`]).
//! * Trapezoid integrals over ellipse boundaries ([`ellipse_contour_integral`]).
//!
//! All reductions use [`crate::sum::pairwise`] in a fixed index order.

mod contour;
mod planar;

pub use contour::{
    chebyshev_boundary_gram, chebyshev_orthonormalizer, ellipse_contour_integral, EllipseContour,
};
pub use planar::{
    planar_rule, planar_weighted_integral, planar_weighted_integral_scaled, PlanarGridSpec,
    PlanarIntegral, PlanarRule, PlanarScheme, PlanarWeight, TAIL_WARNING,
};

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::tridiagonal_ql;
use crate::orthopoly::{eval_all, recurrence_coeffs, FamilySpec, MAX_DEGREE};
use crate::sum::pairwise_complex;
use crate::summability::CoefficientSeries;
use crate::{Error, Result};

/// Largest Gauss rule built by [`gauss_rule`].
pub const MAX_RULE_ORDER: usize = 256;

/// Nodes and positive weights of an n-point Gauss rule for a family's weight.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub family: FamilySpec,
    pub order: usize,
}

impl QuadratureRule {
    /// `Σ w_j f(x_j)` summed pairwise.
    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: F) -> Complex64 {
        let terms: Vec<Complex64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| f(x) * w)
            .collect();
        pairwise_complex(&terms)
    }

    /// The rule affinely mapped from (-1, 1) to (a, b); Legendre rules only.
    pub fn mapped(&self, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        if self.family
            != (FamilySpec::Jacobi {
                alpha: 0.0,
                beta: 0.0,
            })
        {
            return Err(Error::InvalidParameter("only Legendre rules can be mapped"));
        }
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        Ok((
            self.nodes.iter().map(|x| mid + half * x).collect(),
            self.weights.iter().map(|w| half * w).collect(),
        ))
    }
}

/// Golub–Welsch nodes, polished by Newton steps on `p_n`, with weights from
/// the Christoffel function `w_j = 1 / Σ_{k<n} p_k(x_j)²`.
///
/// The eigenvector weights alone carry relative errors near 1e-14 at n ≈ 200,
/// which shows up as a noise floor in computed coefficients.
pub fn gauss_rule(family: FamilySpec, n: usize) -> Result<QuadratureRule> {
    family.validate()?;
    if n == 0 || n > MAX_RULE_ORDER {
        return Err(Error::InvalidParameter("rule order must lie in 1..=256"));
    }
    let a: Vec<f64> = (0..n).map(|k| recurrence_coeffs(family, k).0).collect();
    let b: Vec<f64> = (0..=n).map(|k| recurrence_coeffs(family, k).1).collect();
    let mut diag = a.clone();
    let mut off: Vec<f64> = b[1..].to_vec();
    let mut z = vec![0.0; n];
    let p0 = (-0.5 * family.ln_total_mass()).exp();
    z[0] = p0.recip();
    tridiagonal_ql(&mut diag, &mut off, &mut z)?;
    let mut nodes = diag;
    let mut weights: Vec<f64> = z.iter().map(|v| v * v).collect();
    for (x, w) in nodes.iter_mut().zip(weights.iter_mut()) {
        for _ in 0..3 {
            let (pn, dpn, _) = recurrence_sweep(&a, &b, p0, *x);
            if dpn == 0.0 || !dpn.is_finite() {
                break;
            }
            let step = pn / dpn;
            *x -= step;
            if step.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, _, christoffel) = recurrence_sweep(&a, &b, p0, *x);
        if christoffel.is_finite() && christoffel > 0.0 {
            *w = christoffel.recip();
        }
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        family,
        order: n,
    })
}

/// `(p_n(x), p_n'(x), Σ_{k<n} p_k(x)²)` for the orthonormal recurrence.
fn recurrence_sweep(a: &[f64], b: &[f64], p0: f64, x: f64) -> (f64, f64, f64) {
    let n = a.len();
    let (mut p_prev, mut p) = (0.0, p0);
    let (mut d_prev, mut d) = (0.0, 0.0);
    let mut sq = 0.0;
    for k in 0..n {
        sq += p * p;
        let p_next = ((x - a[k]) * p - b[k] * p_prev) / b[k + 1];
        let d_next = (p + (x - a[k]) * d - b[k] * d_prev) / b[k + 1];
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    (p, d, sq)
}

/// n-point Gauss–Legendre rule on (-1, 1).
pub fn legendre_rule(n: usize) -> Result<QuadratureRule> {
    gauss_rule(
        FamilySpec::Jacobi {
            alpha: 0.0,
            beta: 0.0,
        },
        n,
    )
}

/// `f_k = Σ_j w_j f(x_j) φ_k(x_j)` for k = 0..=k_max with an n-point rule.
pub fn fourier_coefficients<F: Fn(f64) -> Complex64>(
    f: F,
    family: FamilySpec,
    k_max: usize,
    n: usize,
) -> Result<CoefficientSeries> {
    if k_max > MAX_DEGREE {
        return Err(Error::InvalidParameter(
            "degree exceeds the recurrence limit of 200",
        ));
    }
    let rule = gauss_rule(family, n)?;
    let mut columns: Vec<Vec<Complex64>> = vec![Vec::with_capacity(n); k_max + 1];
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let fx = f(x) * w;
        let phis = eval_all(family, k_max, Complex64::new(x, 0.0))?;
        for (col, phi) in columns.iter_mut().zip(phis) {
            col.push(fx * phi);
        }
    }
    let values = columns.iter().map(|c| pairwise_complex(c)).collect();
    CoefficientSeries::new(family, values, n)
}
