use approx::assert_relative_eq;
use num_complex::Complex64;
use ortholab_core::specfun::{
    appell_f4, bessel_k, bessel_k_integral, besseli_entire, gauss_2f1, log_gamma,
    pochhammer_ratio_limit_check,
};
use ortholab_core::SeriesControl;
use proptest::prelude::*;

fn ctrl() -> SeriesControl {
    SeriesControl::default()
}

/// Double-double accumulator: value as an unevaluated sum hi + lo.
#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn add(self, x: f64) -> Dd {
        let s = self.hi + x;
        let bp = s - self.hi;
        let err = (self.hi - (s - bp)) + (x - bp);
        let lo = self.lo + err;
        let hi = s + lo;
        Dd {
            hi,
            lo: lo - (hi - s),
        }
    }
}

/// `E_ν(w)` by brute-force summation with double-double accumulation of
/// real and imaginary parts; terms built from `libm::tgamma`.
fn entire_oracle(nu: f64, w: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0 / libm::tgamma(nu + 1.0), 0.0);
    let (mut re, mut im) = (Dd { hi: 0.0, lo: 0.0 }, Dd { hi: 0.0, lo: 0.0 });
    for m in 0..400 {
        re = re.add(term.re);
        im = im.add(term.im);
        term = term * w / ((m as f64 + 1.0) * (nu + m as f64 + 1.0));
        if term.norm() < 1e-40 {
            break;
        }
    }
    Complex64::new(re.hi, im.hi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn entire_bessel_matches_brute_force(nu in -0.9f64..4.0, re in -5.0f64..5.0, im in -5.0f64..5.0) {
        let w = Complex64::new(re, im);
        let got = besseli_entire(nu, w, ctrl()).unwrap();
        let want = entire_oracle(nu, w);
        // the terms can cancel, so measure against the sum of magnitudes
        let scale = entire_oracle(nu, Complex64::new(w.norm(), 0.0)).re;
        prop_assert!((got - want).norm() <= 1e-11 * scale.max(want.norm()), "{got} vs {want}");
    }

    #[test]
    fn log_gamma_matches_libm(x in 0.5f64..1e6) {
        let got = log_gamma(x).unwrap();
        let want = libm::lgamma(x);
        prop_assert!((got - want).abs() <= 1e-13 * want.abs().max(1.0), "{got} vs {want}");
    }

    #[test]
    fn gauss_2f1_contiguous_relation(a in 0.1f64..3.0, b in 0.1f64..3.0, c in 0.6f64..4.0, r in 0.0f64..0.9, phi in 0.0f64..std::f64::consts::TAU) {
        let t = Complex64::from_polar(r, phi);
        let lhs = gauss_2f1(a, b, c, t, ctrl()).unwrap();
        let rhs = gauss_2f1(a - 1.0, b, c, t, ctrl()).unwrap()
            + t * (b / c) * gauss_2f1(a, b + 1.0, c + 1.0, t, ctrl()).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1.0), "{lhs} vs {rhs}");
    }
}

#[test]
fn log_gamma_values() {
    assert_eq!(log_gamma(1.0).unwrap(), 0.0);
    assert_relative_eq!(
        log_gamma(0.5).unwrap(),
        0.5 * std::f64::consts::PI.ln(),
        max_relative = 1e-14
    );
    assert_relative_eq!(log_gamma(6.0).unwrap(), 120f64.ln(), max_relative = 1e-14);
    assert!(log_gamma(0.0).is_err() && log_gamma(-1.5).is_err());
}

#[test]
fn entire_bessel_values() {
    let e = besseli_entire(0.5, Complex64::new(1.0, 0.0), ctrl()).unwrap();
    assert_relative_eq!(
        e.re,
        2f64.sinh() / std::f64::consts::PI.sqrt(),
        max_relative = 1e-14
    );
    let i0: f64 = (0..40)
        .map(|m| 1.0 / libm::tgamma(m as f64 + 1.0).powi(2))
        .sum();
    assert_relative_eq!(
        besseli_entire(0.0, Complex64::new(1.0, 0.0), ctrl())
            .unwrap()
            .re,
        i0,
        max_relative = 1e-14
    );
    let zero = besseli_entire(1.7, Complex64::new(0.0, 0.0), ctrl()).unwrap();
    assert_relative_eq!(zero.re, 1.0 / libm::tgamma(2.7), max_relative = 1e-14);
}

#[test]
fn bessel_k_against_integral_representation() {
    for &nu in &[0.0, 0.25, 0.5, 1.0, 2.5] {
        for i in 0..=40 {
            // log-spaced x in [0.01, 50]
            let x = 0.01 * (5000f64).powf(i as f64 / 40.0);
            let fast = bessel_k(nu, x).unwrap().value;
            let slow = bessel_k_integral(nu, x).unwrap().value;
            assert!(
                ((fast - slow) / slow).abs() <= 1e-8,
                "nu={nu} x={x}: {fast} vs {slow}"
            );
        }
    }
}

#[test]
fn bessel_k_values() {
    let half = bessel_k(0.5, 1.0).unwrap().value;
    assert_relative_eq!(
        half,
        (std::f64::consts::PI / 2.0).sqrt() * (-1f64).exp(),
        max_relative = 1e-12
    );
    assert_relative_eq!(
        bessel_k(0.0, 1.0).unwrap().value,
        0.421_024_438_240_708_3,
        max_relative = 1e-10
    );
    let asym = (std::f64::consts::PI / 100.0).sqrt() * (-50f64).exp();
    for &nu in &[0.0, 0.5, 1.0] {
        let k = bessel_k(nu, 50.0).unwrap().value;
        assert!((k / asym - 1.0).abs() < 0.02, "nu={nu}");
    }
    assert!(bessel_k(0.5, 0.0).is_err());
    assert!(bessel_k(0.5, 800.0).unwrap().underflowed);
}

#[test]
fn gauss_2f1_values() {
    let c = ctrl();
    assert_eq!(
        gauss_2f1(0.3, 0.4, 0.5, Complex64::new(0.0, 0.0), c).unwrap(),
        Complex64::new(1.0, 0.0)
    );
    let log = gauss_2f1(1.0, 1.0, 2.0, Complex64::new(0.5, 0.0), c).unwrap();
    assert_relative_eq!(log.re, 2.0 * 2f64.ln(), max_relative = 1e-14);
    let binom = gauss_2f1(0.7, 1.3, 1.3, Complex64::new(0.4, 0.0), c).unwrap();
    assert_relative_eq!(binom.re, 0.6f64.powf(-0.7), max_relative = 1e-14);
    assert!(gauss_2f1(1.0, 1.0, 2.0, Complex64::new(0.98, 0.0), c).is_err());
}

#[test]
fn appell_f4_against_double_sum() {
    let (a, b, c1, c2, t, s) = (1.5, 2.0, 1.5, 1.5, 0.1, 0.2);
    let lg = libm::lgamma;
    let mut brute = 0.0;
    for m in 0..=200 {
        for n in 0..=200 {
            let (mf, nf) = (m as f64, n as f64);
            let ln = lg(a + mf + nf) - lg(a) + lg(b + mf + nf)
                - lg(b)
                - (lg(c1 + mf) - lg(c1))
                - (lg(c2 + nf) - lg(c2))
                - lg(mf + 1.0)
                - lg(nf + 1.0)
                + mf * f64::ln(t)
                + nf * f64::ln(s);
            brute += ln.exp();
        }
    }
    let got = appell_f4(
        a,
        b,
        c1,
        c2,
        Complex64::new(t, 0.0),
        Complex64::new(s, 0.0),
        ctrl(),
    )
    .unwrap();
    assert_relative_eq!(got.re, brute, max_relative = 1e-10);
    let zero = appell_f4(
        a,
        b,
        c1,
        c2,
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        ctrl(),
    )
    .unwrap();
    assert_eq!(zero, Complex64::new(1.0, 0.0));
    let row = appell_f4(
        a,
        b,
        c1,
        c2,
        Complex64::new(0.3, 0.1),
        Complex64::new(0.0, 0.0),
        ctrl(),
    )
    .unwrap();
    let f21 = gauss_2f1(a, b, c1, Complex64::new(0.3, 0.1), ctrl()).unwrap();
    assert!((row - f21).norm() <= 1e-14 * f21.norm());
    assert!(appell_f4(
        a,
        b,
        c1,
        c2,
        Complex64::new(0.5, 0.0),
        Complex64::new(0.5, 0.0),
        ctrl()
    )
    .is_err());
}

#[test]
fn pochhammer_ratios_approach_one() {
    assert!(pochhammer_ratio_limit_check(0.7, 0.7, 50)
        .unwrap()
        .iter()
        .all(|&r| (r - 1.0).abs() < 1e-14));
    let r = pochhammer_ratio_limit_check(2.0, 1.0, 100).unwrap();
    assert_relative_eq!(r[99], 1.01, max_relative = 1e-12);
    let r = pochhammer_ratio_limit_check(1.5, 0.5, 400).unwrap();
    assert_relative_eq!(r[99], 1.005, max_relative = 1e-3);
    // |r_k - 1| ≤ C/k with C fitted at k = 10, and monotone from there on
    let c = (r[9] - 1.0).abs() * 10.0 * 1.01;
    for k in 10..=400 {
        assert!((r[k - 1] - 1.0).abs() <= c / k as f64, "k={k}");
        if k > 10 {
            assert!(r[k - 1] <= r[k - 2]);
        }
    }
    assert!(pochhammer_ratio_limit_check(1.0, 2.0, 5).is_err());
}
