use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::gamma::{lgamma, RECIP_GAMMA};
use super::{SeriesControl, Stopper};
use crate::{Error, Result};

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 20_000;
const TEMME_SWITCH: f64 = 2.0;

/// `E_ν(w) = Σ_m w^m / (m! Γ(ν + m + 1))`, the entire function equal to
/// `w^{-ν/2} I_ν(2√w)`.
///
/// Summed directly in `w`, so there is no square root and no branch cut.
pub fn besseli_entire(nu: f64, w: Complex64, ctrl: SeriesControl) -> Result<Complex64> {
    if !(nu > -1.0) || !nu.is_finite() {
        return Err(Error::InvalidParameter("E_nu requires nu > -1"));
    }
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::Domain("E_nu argument must be finite"));
    }
    let mut stop = Stopper::new(ctrl)?;
    let mut term = Complex64::new((-lgamma(nu + 1.0)).exp(), 0.0);
    let mut sum = term;
    let mut m = 1.0;
    loop {
        term = term * w / (m * (nu + m));
        sum += term;
        if stop.done(term.norm(), sum.norm())? {
            return Ok(sum);
        }
        m += 1.0;
    }
}

/// Value of `K_ν(x)` with a flag for results below the normal range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KValue {
    pub value: f64,
    /// Set when `e^{-x}` pushes the result below `f64::MIN_POSITIVE`;
    /// `value` is then 0 or subnormal.
    pub underflowed: bool,
}

impl KValue {
    fn from_scaled(scaled: f64, x: f64) -> KValue {
        let value = scaled * (-x).exp();
        let underflowed = value < f64::MIN_POSITIVE;
        KValue {
            value: if underflowed { 0.0 } else { value },
            underflowed,
        }
    }
}

/// Modified Bessel function of the second kind, `K_ν(x)`.
pub fn bessel_k(nu: f64, x: f64) -> Result<KValue> {
    Ok(KValue::from_scaled(bessel_k_scaled(nu, x)?, x))
}

/// Exponentially scaled `e^x K_ν(x)`, finite for every x > 0.
///
/// Temme's series for x < 2 and Steed's continued fraction otherwise give
/// `K_μ` and `K_{μ+1}` with |μ| ≤ 1/2; upward recurrence reaches ν.
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    check_args(nu, x)?;
    let nl = (nu + 0.5).floor();
    let mu = nu - nl;
    let (mut k_mu, mut k_mu1) = if x < TEMME_SWITCH {
        let (a, b) = temme(mu, x)?;
        let ex = x.exp();
        (a * ex, b * ex)
    } else {
        steed(mu, x)?
    };
    let two_over_x = 2.0 / x;
    for i in 1..=(nl as usize) {
        let next = (mu + i as f64) * two_over_x * k_mu1 + k_mu;
        k_mu = k_mu1;
        k_mu1 = next;
    }
    if !k_mu.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(k_mu)
}

/// `K_ν(x)` from `∫_0^∞ e^{-x cosh t} cosh(νt) dt` by the trapezoid rule.
///
/// Slow; kept as an independent reference for the fast path.
pub fn bessel_k_integral(nu: f64, x: f64) -> Result<KValue> {
    Ok(KValue::from_scaled(bessel_k_integral_scaled(nu, x)?, x))
}

/// `e^x K_ν(x)` from the integral representation.
pub fn bessel_k_integral_scaled(nu: f64, x: f64) -> Result<f64> {
    check_args(nu, x)?;
    // the integrand is even and entire in t, so the trapezoid rule on the
    // half line converges geometrically; h resolves the peak width 1/√x
    let h = 0.02f64.min(0.25 / x.sqrt());
    let ln_integrand = |t: f64| {
        let s = (0.5 * t).sinh();
        let ln_cosh = nu * t + (0.5 * (1.0 + (-2.0 * nu * t).exp())).ln();
        -2.0 * x * s * s + ln_cosh
    };
    let mut sum = 0.5 * ln_integrand(0.0).exp();
    let mut prev = sum;
    let mut k = 1usize;
    loop {
        let v = ln_integrand(k as f64 * h).exp();
        sum += v;
        if v < prev && v <= 1e-18 * sum {
            break;
        }
        if !sum.is_finite() {
            return Err(Error::Overflow);
        }
        if k >= 4_000_000 {
            return Err(Error::Truncation { terms: k });
        }
        prev = v;
        k += 1;
    }
    Ok(h * sum)
}

fn check_args(nu: f64, x: f64) -> Result<()> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::InvalidParameter("K_nu requires nu >= 0"));
    }
    if !(x > 0.0) || x.is_nan() {
        return Err(Error::Domain("K_nu requires x > 0"));
    }
    if x.is_infinite() {
        return Err(Error::Domain("K_nu requires finite x"));
    }
    Ok(())
}

/// `(Γ₁, Γ₂, 1/Γ(1+μ), 1/Γ(1-μ))` for Temme's series, |μ| ≤ 1/2.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mu2 = mu * mu;
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    for k in (1..RECIP_GAMMA.len()).rev() {
        if k % 2 == 0 {
            gam1 = gam1 * mu2 - RECIP_GAMMA[k];
        } else {
            gam2 = gam2 * mu2 + RECIP_GAMMA[k];
        }
    }
    (gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1)
}

fn temme(mu: f64, x: f64) -> Result<(f64, f64)> {
    let x2 = 0.5 * x;
    let pimu = PI * mu;
    let fact = if pimu.abs() < EPS {
        1.0
    } else {
        pimu / pimu.sin()
    };
    let d = -x2.ln();
    let e = mu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let dd = x2 * x2;
    let mut sum1 = p;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu * mu);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            return Ok((sum, sum1 * 2.0 / x));
        }
    }
    Err(Error::Truncation { terms: MAX_ITER })
}

/// Scaled `(e^x K_μ, e^x K_{μ+1})` from Steed's continued fraction.
fn steed(mu: f64, x: f64) -> Result<(f64, f64)> {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            h *= a1;
            let k_mu = (PI / (2.0 * x)).sqrt() / s;
            let k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
            return Ok((k_mu, k_mu1));
        }
    }
    Err(Error::Truncation { terms: MAX_ITER })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn entire_at_origin() {
        let ctrl = SeriesControl::default();
        for &nu in &[-0.5, 0.0, 0.5, 2.3] {
            let v = besseli_entire(nu, c(0.0, 0.0), ctrl).unwrap();
            assert_relative_eq!(v.re, (-lgamma(nu + 1.0)).exp(), max_relative = 1e-15);
            assert_eq!(v.im, 0.0);
        }
    }

    #[test]
    fn entire_closed_forms() {
        let ctrl = SeriesControl::default();
        // E_{1/2}(w) = sinh(2√w) / √(π w)
        let v = besseli_entire(0.5, c(1.0, 0.0), ctrl).unwrap();
        assert_relative_eq!(v.re, 2f64.sinh() / PI.sqrt(), max_relative = 1e-15);
        // E_0(1) = I_0(2)
        let v = besseli_entire(0.0, c(1.0, 0.0), ctrl).unwrap();
        assert_relative_eq!(v.re, 2.279_585_302_336_067_3, max_relative = 1e-15);
        // E_{-1/2}(w) = cosh(2√w)/√π, which turns into a cosine on the negative axis
        let v = besseli_entire(-0.5, c(-4.0, 0.0), ctrl).unwrap();
        assert_relative_eq!(v.re, 4f64.cos() / PI.sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn entire_rejects_bad_order() {
        assert!(besseli_entire(-1.0, c(1.0, 0.0), SeriesControl::default()).is_err());
    }

    #[test]
    fn k_half_closed_form() {
        for &x in &[1e-6, 0.01, 0.5, 1.0, 1.999, 2.0, 5.0, 50.0, 300.0] {
            let expected = (PI / (2.0 * x)).sqrt();
            assert_relative_eq!(
                bessel_k_scaled(0.5, x).unwrap(),
                expected,
                max_relative = 1e-14
            );
            // K_{3/2}(x) = √(π/2x) e^{-x} (1 + 1/x)
            let expected = expected * (1.0 + 1.0 / x);
            assert_relative_eq!(
                bessel_k_scaled(1.5, x).unwrap(),
                expected,
                max_relative = 1e-14
            );
        }
        assert_relative_eq!(
            bessel_k(0.5, 1.0).unwrap().value,
            0.461_068_504_447_894_6,
            max_relative = 1e-15
        );
    }

    #[test]
    fn k_reference_values() {
        assert_relative_eq!(
            bessel_k(0.0, 1.0).unwrap().value,
            0.421_024_438_240_708_3,
            max_relative = 1e-14
        );
        // K_1(1) and K_0(2), K_1(2) from tables
        assert_relative_eq!(
            bessel_k(1.0, 1.0).unwrap().value,
            0.601_907_230_197_234_6,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            bessel_k(0.0, 2.0).unwrap().value,
            0.113_893_872_749_533_43,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            bessel_k(1.0, 2.0).unwrap().value,
            0.139_865_881_816_522_43,
            max_relative = 1e-14
        );
    }

    #[test]
    fn k_large_argument_asymptotics() {
        let x = 50.0;
        let asym = (PI / (2.0 * x)).sqrt() * (-x).exp();
        // the first correction is (4ν² - 1)/(8x), under 2% for ν < 3/2
        for &nu in &[0.0, 0.25, 0.5, 1.0] {
            let v = bessel_k(nu, x).unwrap().value;
            assert!((v / asym - 1.0).abs() < 0.02, "nu = {nu}");
        }
    }

    #[test]
    fn k_underflow_flag() {
        let v = bessel_k(0.3, 800.0).unwrap();
        assert!(v.underflowed);
        assert_eq!(v.value, 0.0);
        let v = bessel_k(0.3, 700.0).unwrap();
        assert!(!v.underflowed && v.value > 0.0);
    }

    #[test]
    fn k_domain() {
        assert!(bessel_k(0.5, 0.0).is_err());
        assert!(bessel_k(0.5, -1.0).is_err());
        assert!(bessel_k(-0.5, 1.0).is_err());
    }

    #[test]
    fn k_fast_path_matches_integral() {
        for &nu in &[0.0, 0.25, 0.5, 1.0, 2.5, 7.3] {
            for &x in &[1e-6, 0.01, 0.3, 1.0, 1.99, 2.01, 10.0, 50.0, 700.0] {
                let fast = bessel_k_scaled(nu, x).unwrap();
                let slow = bessel_k_integral_scaled(nu, x).unwrap();
                assert_relative_eq!(fast, slow, max_relative = 1e-12);
            }
        }
    }
}
