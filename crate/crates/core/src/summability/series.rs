use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::orthopoly::FamilySpec;
use crate::{Error, Result};

/// Coefficients below `NOISE_FLOOR · max|f_k|` are treated as unresolved.
pub const NOISE_FLOOR: f64 = 1e-12;

/// Only coefficients above `FIT_FLOOR · max|f_k|` enter the threshold fit.
///
/// Quadrature coefficients of degree k carry errors near `k² ε ‖f‖` from the
/// rounding of nodes close to the interval ends, so the fit stays well clear
/// of the noise floor.
pub const FIT_FLOOR: f64 = 1e-11;

/// Number of trailing terms inspected by the convergence verdict.
pub const VERDICT_WINDOW: usize = 8;

/// Fourier coefficients `f_0..f_K` of one function in one family.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries {
    pub family: FamilySpec,
    pub values: Vec<Complex64>,
    /// Gauss rule order used to compute the values (0 for analytic values).
    pub quadrature_order: usize,
}

impl CoefficientSeries {
    pub fn new(
        family: FamilySpec,
        values: Vec<Complex64>,
        quadrature_order: usize,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientData { needed: 1, got: 0 });
        }
        if values
            .iter()
            .any(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(Error::Overflow);
        }
        Ok(CoefficientSeries {
            family,
            values,
            quadrature_order,
        })
    }

    /// Analytic coefficients.
    pub fn from_values(family: FamilySpec, values: Vec<Complex64>) -> Result<Self> {
        Self::new(family, values, 0)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Indices whose magnitude clears the noise floor.
    pub fn resolvable(&self) -> Vec<usize> {
        self.above(NOISE_FLOOR)
    }

    fn above(&self, relative: f64) -> Vec<usize> {
        let max = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let floor = relative * max;
        (0..self.values.len())
            .filter(|&k| self.values[k].norm() > floor)
            .collect()
    }
}

/// Partial sums `S_j = Σ_{k≤j} |f_k|² θ^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSum {
    pub partial_sums: Vec<f64>,
    /// A term left the representable range; the sums stop before it.
    pub overflow: bool,
}

impl WeightedSum {
    pub fn total(&self) -> f64 {
        self.partial_sums.last().copied().unwrap_or(0.0)
    }
}

/// Partial sums for j = 0..=k_max.
pub fn weighted_sum(coeffs: &CoefficientSeries, theta: f64, k_max: usize) -> Result<WeightedSum> {
    if !(theta > 1.0) || !theta.is_finite() {
        return Err(Error::InvalidParameter("weighted sum requires theta > 1"));
    }
    if k_max >= coeffs.len() {
        return Err(Error::InsufficientData {
            needed: k_max + 1,
            got: coeffs.len(),
        });
    }
    let ln_theta = theta.ln();
    let mut partial_sums = Vec::with_capacity(k_max + 1);
    let mut acc = 0.0;
    for (k, f) in coeffs.values.iter().take(k_max + 1).enumerate() {
        let term = weighted_term(*f, k, ln_theta);
        if !term.is_finite() {
            return Ok(WeightedSum {
                partial_sums,
                overflow: true,
            });
        }
        acc += term;
        if !acc.is_finite() {
            return Ok(WeightedSum {
                partial_sums,
                overflow: true,
            });
        }
        partial_sums.push(acc);
    }
    Ok(WeightedSum {
        partial_sums,
        overflow: false,
    })
}

fn weighted_term(f: Complex64, k: usize, ln_theta: f64) -> f64 {
    let m = f.norm();
    if m == 0.0 {
        return 0.0;
    }
    (2.0 * m.ln() + k as f64 * ln_theta).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusStatus {
    /// A finite threshold was fitted.
    Finite,
    /// The coefficients decay faster than any geometric rate.
    Infinite,
    /// The tail does not follow the fitted model.
    Inconclusive,
}

/// Estimate of the threshold `θ* = 1 / limsup |f_k|^{2/k}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusEstimate {
    /// θ*; `f64::INFINITY` when the status is `Infinite`.
    pub value: f64,
    pub status: RadiusStatus,
    /// Coefficient of `k ln k` in the fitted `ln|f_k|²`; negative means
    /// factorial-type decay.
    pub superexp: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
    /// Points in the fitting window.
    pub window: usize,
}

const MIN_COEFFS: usize = 16;
const MIN_WINDOW: usize = 8;
const SUPEREXP_LIMIT: f64 = 0.25;
const RESIDUAL_LIMIT: f64 = 0.5;

/// Fits `ln|f_k|² ≈ a + b k + c k ln k + d ln k` over the last half of the
/// resolvable coefficients and returns `θ* = exp(-(b + c (1 + ln k_last)))`,
/// the reciprocal of the local geometric rate at the end of the window.
///
/// The `ln k` term absorbs algebraic prefactors such as `Γ(k+ν+1)/k!`; the
/// `k ln k` term detects factorial decay (reported as `Infinite`). An
/// expansion that reaches the noise floor early is also `Infinite`.
pub fn radius_estimate(coeffs: &CoefficientSeries) -> Result<RadiusEstimate> {
    if coeffs.len() < MIN_COEFFS {
        return Err(Error::InsufficientData {
            needed: MIN_COEFFS,
            got: coeffs.len(),
        });
    }
    let resolvable = coeffs.above(FIT_FLOOR);
    let k_last = resolvable.last().copied().unwrap_or(0);
    let window: Vec<usize> = resolvable
        .iter()
        .copied()
        .filter(|&k| k > 0 && 2 * k >= k_last)
        .collect();
    if window.len() < MIN_WINDOW {
        return Ok(RadiusEstimate {
            value: f64::INFINITY,
            status: RadiusStatus::Infinite,
            superexp: f64::NAN,
            residual: 0.0,
            window: window.len(),
        });
    }
    let rows: Vec<[f64; 4]> = window
        .iter()
        .map(|&k| {
            let kf = k as f64;
            [1.0, kf, kf * kf.ln(), kf.ln()]
        })
        .collect();
    let y: Vec<f64> = window
        .iter()
        .map(|&k| 2.0 * coeffs.values[k].norm().ln())
        .collect();
    let (p, residual) = least_squares4(&rows, &y)?;
    let (b, c) = (p[1], p[2]);
    let rate = b + c * (1.0 + (k_last as f64).ln());
    let status = if c < -SUPEREXP_LIMIT {
        RadiusStatus::Infinite
    } else if residual > RESIDUAL_LIMIT || c > SUPEREXP_LIMIT {
        RadiusStatus::Inconclusive
    } else {
        RadiusStatus::Finite
    };
    let value = match status {
        RadiusStatus::Infinite => f64::INFINITY,
        _ => (-rate).exp(),
    };
    Ok(RadiusEstimate {
        value,
        status,
        superexp: c,
        residual,
        window: window.len(),
    })
}

/// Least squares for four unknowns by Householder QR on column-scaled data.
fn least_squares4(rows: &[[f64; 4]], y: &[f64]) -> Result<([f64; 4], f64)> {
    let m = rows.len();
    let mut a: Vec<[f64; 4]> = rows.to_vec();
    let mut scale = [0.0; 4];
    for (j, s) in scale.iter_mut().enumerate() {
        *s = a.iter().map(|r| r[j] * r[j]).sum::<f64>().sqrt();
        if *s == 0.0 {
            *s = 1.0;
        }
        for r in a.iter_mut() {
            r[j] /= *s;
        }
    }
    let mut rhs = y.to_vec();
    for j in 0..4 {
        let norm = (j..m).map(|i| a[i][j] * a[i][j]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[j][j] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (j..m).map(|i| a[i][j]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        #[allow(clippy::needless_range_loop)]
        for col in j..4 {
            let dot: f64 = (j..m).map(|i| v[i - j] * a[i][col]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in j..m {
                a[i][col] -= f * v[i - j];
            }
        }
        let dot: f64 = (j..m).map(|i| v[i - j] * rhs[i]).sum();
        let f = 2.0 * dot / vnorm2;
        for i in j..m {
            rhs[i] -= f * v[i - j];
        }
    }
    let mut x = [0.0; 4];
    for j in (0..4).rev() {
        let mut s = rhs[j];
        for col in j + 1..4 {
            s -= a[j][col] * x[col];
        }
        // a column that is numerically dependent on the others gets 0
        x[j] = if a[j][j].abs() < 1e-12 {
            0.0
        } else {
            s / a[j][j]
        };
    }
    let residual = (rhs[4.min(m)..].iter().map(|r| r * r).sum::<f64>() / m as f64).sqrt();
    for (xj, s) in x.iter_mut().zip(&scale) {
        *xj /= s;
    }
    Ok((x, residual))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Converged,
    Diverging,
    Inconclusive,
}

/// Relative margin around θ* inside which no verdict is given.
pub const THRESHOLD_MARGIN: f64 = 0.01;

/// Convergence verdict for `Σ |f_k|² θ^k` from finite data.
///
/// Looks at the last eight resolvable terms and the threshold estimate:
/// * `Diverging` on overflow, when those terms increase, or when θ ≥ 1.01 θ*;
/// * `Converged` when they strictly decrease and θ ≤ 0.99 θ*;
/// * `Inconclusive` otherwise.
pub fn verdict(coeffs: &CoefficientSeries, theta: f64, radius: &RadiusEstimate) -> Result<Verdict> {
    let sums = weighted_sum(coeffs, theta, coeffs.len() - 1)?;
    if sums.overflow {
        return Ok(Verdict::Diverging);
    }
    let ln_theta = theta.ln();
    let resolvable = coeffs.resolvable();
    let tail: Vec<f64> = resolvable
        .iter()
        .rev()
        .take(VERDICT_WINDOW)
        .rev()
        .map(|&k| weighted_term(coeffs.values[k], k, ln_theta))
        .collect();
    if tail.len() == VERDICT_WINDOW && tail.windows(2).all(|w| w[1] > w[0]) {
        return Ok(Verdict::Diverging);
    }
    let ratio = match radius.status {
        RadiusStatus::Infinite => 0.0,
        _ => theta / radius.value,
    };
    if radius.status != RadiusStatus::Inconclusive && ratio >= 1.0 + THRESHOLD_MARGIN {
        return Ok(Verdict::Diverging);
    }
    let decreasing = tail.len() < VERDICT_WINDOW || tail.windows(2).all(|w| w[1] < w[0]);
    if decreasing && radius.status != RadiusStatus::Inconclusive && ratio <= 1.0 - THRESHOLD_MARGIN
    {
        return Ok(Verdict::Converged);
    }
    Ok(Verdict::Inconclusive)
}

/// Partial sums, verdicts and threshold over a θ grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SummabilityReport {
    pub theta_grid: Vec<f64>,
    /// `partial_sums[i][j] = S_j(θ_i)`.
    pub partial_sums: Vec<Vec<f64>>,
    pub verdicts: Vec<Verdict>,
    pub radius: RadiusEstimate,
    /// Set when the threshold is not a finite value above 1.
    pub radius_flagged: bool,
}

pub fn summability_report(
    coeffs: &CoefficientSeries,
    theta_grid: &[f64],
) -> Result<SummabilityReport> {
    let radius = radius_estimate(coeffs)?;
    let mut partial_sums = Vec::with_capacity(theta_grid.len());
    let mut verdicts = Vec::with_capacity(theta_grid.len());
    for &theta in theta_grid {
        partial_sums.push(weighted_sum(coeffs, theta, coeffs.len() - 1)?.partial_sums);
        verdicts.push(verdict(coeffs, theta, &radius)?);
    }
    let radius_flagged = !(radius.status == RadiusStatus::Finite && radius.value > 1.0);
    Ok(SummabilityReport {
        theta_grid: theta_grid.to_vec(),
        partial_sums,
        verdicts,
        radius,
        radius_flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn geometric(r: f64, n: usize) -> CoefficientSeries {
        let values = (0..n)
            .map(|k| Complex64::new(r.powi(k as i32), 0.0))
            .collect();
        CoefficientSeries::from_values(FamilySpec::Hermite, values).unwrap()
    }

    #[test]
    fn delta_sequence_sums() {
        let mut values = alloc::vec![Complex64::new(0.0, 0.0); 10];
        values[3] = Complex64::new(1.0, 0.0);
        let c = CoefficientSeries::from_values(FamilySpec::Hermite, values).unwrap();
        let s = weighted_sum(&c, 2.0, 9).unwrap();
        assert_eq!(s.partial_sums[2], 0.0);
        assert_relative_eq!(s.total(), 8.0, max_relative = 1e-14);
        assert!(weighted_sum(&c, 2.0, 10).is_err());
        assert!(weighted_sum(&c, 1.0, 5).is_err());
    }

    #[test]
    fn overflow_is_flagged() {
        let c = geometric(1e30, 10);
        let s = weighted_sum(&c, 2.0, 9).unwrap();
        assert!(s.overflow);
        assert!(s.partial_sums.len() < 10);
    }

    #[test]
    fn geometric_radius() {
        let r = radius_estimate(&geometric(0.5, 40)).unwrap();
        assert_eq!(r.status, RadiusStatus::Finite);
        assert_relative_eq!(r.value, 4.0, max_relative = 1e-10);
        let r = radius_estimate(&geometric(0.3, 40)).unwrap();
        assert_relative_eq!(r.value, 1.0 / 0.09, max_relative = 1e-8);
        // too few resolvable terms before the noise floor reads as termination
        let r = radius_estimate(&geometric(0.05, 40)).unwrap();
        assert_eq!(r.status, RadiusStatus::Infinite);
    }

    #[test]
    fn factorial_decay_is_infinite() {
        // f_k = 1/k!
        let mut v = 1.0;
        let values: Vec<Complex64> = (0..40)
            .map(|k| {
                if k > 0 {
                    v /= k as f64;
                }
                Complex64::new(v, 0.0)
            })
            .collect();
        let c = CoefficientSeries::from_values(FamilySpec::Hermite, values).unwrap();
        assert_eq!(radius_estimate(&c).unwrap().status, RadiusStatus::Infinite);
    }

    #[test]
    fn terminating_expansion_is_infinite() {
        let mut values = alloc::vec![Complex64::new(0.0, 0.0); 20];
        values[0] = Complex64::new(1.0, 0.0);
        values[1] = Complex64::new(0.5, 0.0);
        let c = CoefficientSeries::from_values(FamilySpec::ChebyshevT, values).unwrap();
        let r = radius_estimate(&c).unwrap();
        assert_eq!(r.status, RadiusStatus::Infinite);
        assert!(r.value.is_infinite());
    }

    #[test]
    fn too_few_coefficients() {
        assert!(radius_estimate(&geometric(0.5, 15)).is_err());
    }

    #[test]
    fn verdicts_around_threshold() {
        let c = geometric(0.5, 64);
        let r = radius_estimate(&c).unwrap();
        assert_eq!(verdict(&c, 3.5, &r).unwrap(), Verdict::Converged);
        assert_eq!(verdict(&c, 4.5, &r).unwrap(), Verdict::Diverging);
        assert_eq!(verdict(&c, 4.0, &r).unwrap(), Verdict::Inconclusive);
    }

    #[test]
    fn report_shape() {
        let c = geometric(0.5, 32);
        let rep = summability_report(&c, &[2.0, 3.0, 5.0]).unwrap();
        assert_eq!(rep.partial_sums.len(), 3);
        assert_eq!(rep.partial_sums[0].len(), 32);
        assert!(!rep.radius_flagged);
        assert_eq!(
            rep.verdicts,
            alloc::vec![Verdict::Converged, Verdict::Converged, Verdict::Diverging]
        );
    }
}
