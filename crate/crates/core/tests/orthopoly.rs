use approx::assert_relative_eq;
use num_complex::Complex64;
use ortholab_core::kernels::EllipseDomain;
use ortholab_core::orthopoly::{eval_all, eval_orthonormal, recurrence_coeffs, standard_scale};
use ortholab_core::quadrature::gauss_rule;
use ortholab_core::FamilySpec;
use proptest::prelude::*;

const PI: f64 = std::f64::consts::PI;

fn families() -> Vec<FamilySpec> {
    vec![
        FamilySpec::Hermite,
        FamilySpec::Laguerre { nu: 0.0 },
        FamilySpec::Laguerre { nu: 1.5 },
        FamilySpec::Jacobi {
            alpha: 0.5,
            beta: -0.25,
        },
        FamilySpec::Jacobi {
            alpha: -0.5,
            beta: -0.5,
        },
        FamilySpec::Jacobi {
            alpha: 2.0,
            beta: 1.0,
        },
        FamilySpec::Gegenbauer { lambda: 1.0 },
        FamilySpec::ChebyshevT,
    ]
}

/// Double-double number `hi + lo`.
#[derive(Clone, Copy, Debug)]
struct Dd(f64, f64);

impl Dd {
    fn from(x: f64) -> Dd {
        Dd(x, 0.0)
    }

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bp = s - a;
        Dd(s, (a - (s - bp)) + (b - bp))
    }

    fn norm(hi: f64, lo: f64) -> Dd {
        let s = hi + lo;
        Dd(s, lo - (s - hi))
    }

    fn add(self, o: Dd) -> Dd {
        let s = Dd::two_sum(self.0, o.0);
        Dd::norm(s.0, s.1 + self.1 + o.1)
    }

    fn neg(self) -> Dd {
        Dd(-self.0, -self.1)
    }

    fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.0 * o.0;
        let e = self.0.mul_add(o.0, -p);
        Dd::norm(p, e + self.0 * o.1 + self.1 * o.0)
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.0 / o.0;
        let r = self.sub(o.mul(Dd::from(q1)));
        let q2 = r.0 / o.0;
        let r = r.sub(o.mul(Dd::from(q2)));
        let q3 = r.0 / o.0;
        Dd::two_sum(q1, q2).add(Dd::from(q3))
    }

    fn sqrt(self) -> Dd {
        let x = Dd::from(self.0.sqrt());
        // one Newton step doubles the precision
        x.add(self.sub(x.mul(x)).div(x.mul(Dd::from(2.0))))
    }
}

/// Moments `μ_n / μ_0` of the weight and `μ_0`, from recurrences that do not
/// involve the polynomials.
fn moments(family: FamilySpec, count: usize) -> (Vec<Dd>, f64) {
    let mut m = vec![Dd::from(1.0)];
    let lg = libm::lgamma;
    let mu0 = match family {
        FamilySpec::Hermite => {
            // μ_{n+2} = (n+1)/2 μ_n
            m.push(Dd::from(0.0));
            for n in 0..count {
                let v = m[n].mul(Dd::from(n as f64 + 1.0)).div(Dd::from(2.0));
                m.push(v);
            }
            PI.sqrt()
        }
        FamilySpec::Laguerre { nu } => {
            // μ_{n+1} = (n+ν+1) μ_n
            for n in 0..count {
                let v = m[n].mul(Dd::two_sum(n as f64 + 1.0, nu));
                m.push(v);
            }
            lg(nu + 1.0).exp()
        }
        FamilySpec::Jacobi { alpha, beta } => {
            // (n+α+β+2) μ_{n+1} = n μ_{n-1} + (β-α) μ_n, from integrating
            // d/dx[xⁿ (1-x)^{α+1} (1+x)^{β+1}] over (-1, 1)
            for n in 0..count {
                let prev = if n == 0 {
                    Dd::from(0.0)
                } else {
                    m[n - 1].mul(Dd::from(n as f64))
                };
                let v = prev
                    .add(m[n].mul(Dd::from(beta - alpha)))
                    .div(Dd::two_sum(n as f64 + 2.0, alpha + beta));
                m.push(v);
            }
            (lg(alpha + 1.0) + lg(beta + 1.0) - lg(alpha + beta + 2.0)).exp()
                * 2f64.powf(alpha + beta + 1.0)
        }
        FamilySpec::Gegenbauer { lambda } => {
            return moments(
                FamilySpec::Jacobi {
                    alpha: lambda - 0.5,
                    beta: lambda - 0.5,
                },
                count,
            );
        }
        FamilySpec::ChebyshevT => {
            return moments(
                FamilySpec::Jacobi {
                    alpha: -0.5,
                    beta: -0.5,
                },
                count,
            )
        }
    };
    m.truncate(count + 1);
    (m, mu0)
}

/// Monomial coefficients of φ_0..φ_n from the Cholesky factor of the
/// Hankel moment matrix: φ_k = Σ_j C[k][j] xʲ with C = L⁻¹.
fn moment_polynomials(family: FamilySpec, n: usize) -> Vec<Vec<f64>> {
    let m = n + 1;
    let (mom, mu0) = moments(family, 2 * n);
    let zero = Dd::from(0.0);
    let mut l = vec![vec![zero; m]; m];
    for i in 0..m {
        for j in 0..=i {
            let s = (0..j).fold(zero, |acc, k| acc.add(l[i][k].mul(l[j][k])));
            let r = mom[i + j].sub(s);
            l[i][j] = if i == j { r.sqrt() } else { r.div(l[j][j]) };
        }
    }
    let mut c = vec![vec![zero; m]; m];
    #[allow(clippy::needless_range_loop)]
    for i in 0..m {
        c[i][i] = Dd::from(1.0).div(l[i][i]);
        for j in 0..i {
            let s = (j..i).fold(zero, |acc, k| acc.add(l[i][k].mul(c[k][j])));
            c[i][j] = s.div(l[i][i]).neg();
        }
    }
    let scale = mu0.sqrt().recip();
    c.iter()
        .map(|row| row.iter().map(|v| v.0 * scale).collect())
        .collect()
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

#[test]
fn recurrence_matches_moment_oracle() {
    let points = [
        Complex64::new(0.3, 0.0),
        Complex64::new(-0.7, 0.4),
        Complex64::new(1.2, -0.5),
    ];
    for family in families() {
        let polys = moment_polynomials(family, 5);
        for &z in &points {
            let got = eval_all(family, 5, z).unwrap();
            for k in 0..=5 {
                // Laguerre polynomials carry the standard sign (-1)^k on the leading term
                let sign = if matches!(family, FamilySpec::Laguerre { .. }) && k % 2 == 1 {
                    -1.0
                } else {
                    1.0
                };
                let want = horner(&polys[k], z) * sign;
                assert!(
                    (got[k] - want).norm() <= 1e-12 * want.norm().max(1.0),
                    "{family:?} k={k} z={z}: {} vs {want}",
                    got[k]
                );
            }
        }
    }
}

#[test]
fn recurrence_coefficient_values() {
    for k in 0..6 {
        let (a, b) = recurrence_coeffs(FamilySpec::Hermite, k);
        assert_eq!(a, 0.0);
        assert_relative_eq!(b, (k as f64 / 2.0).sqrt(), max_relative = 1e-15);
        let nu = 0.7;
        let (a, b) = recurrence_coeffs(FamilySpec::Laguerre { nu }, k);
        assert_relative_eq!(a, 2.0 * k as f64 + nu + 1.0, max_relative = 1e-15);
        assert_relative_eq!(
            b,
            (k as f64 * (k as f64 + nu)).sqrt(),
            max_relative = 1e-15,
            epsilon = 1e-300
        );
    }
    let (a0, _) = recurrence_coeffs(
        FamilySpec::Jacobi {
            alpha: 0.5,
            beta: 1.5,
        },
        0,
    );
    assert_relative_eq!(a0, (1.5 - 0.5) / (0.5 + 1.5 + 2.0), max_relative = 1e-15);
}

#[test]
fn orthonormal_under_gauss_quadrature() {
    for family in families() {
        let rule = gauss_rule(family, 64).unwrap();
        let table: Vec<Vec<f64>> = rule
            .nodes
            .iter()
            .map(|&x| {
                eval_all(family, 20, Complex64::new(x, 0.0))
                    .unwrap()
                    .iter()
                    .map(|v| v.re)
                    .collect()
            })
            .collect();
        for k in 0..=20 {
            for m in 0..=20 {
                let s: f64 = table
                    .iter()
                    .zip(&rule.weights)
                    .map(|(p, w)| w * p[k] * p[m])
                    .sum();
                let want = if k == m { 1.0 } else { 0.0 };
                assert!((s - want).abs() <= 1e-10, "{family:?} ({k},{m}): {s}");
            }
        }
    }
}

#[test]
fn gegenbauer_is_symmetric_jacobi() {
    let theta = 3.0;
    let e = EllipseDomain::new(theta).unwrap();
    let (a, b) = (e.semi_major(), e.semi_minor());
    for &lambda in &[0.0, 0.5, 1.0, 2.0] {
        let g = FamilySpec::Gegenbauer { lambda };
        let j = FamilySpec::Jacobi {
            alpha: lambda - 0.5,
            beta: lambda - 0.5,
        };
        for i in 0..15 {
            for r in 0..7 {
                let z = Complex64::new(a * (i as f64 / 7.0 - 1.0), b * (r as f64 / 3.5 - 1.0));
                if !e.contains(z) {
                    continue;
                }
                let (pg, pj) = (eval_all(g, 15, z).unwrap(), eval_all(j, 15, z).unwrap());
                for k in 0..=15 {
                    assert!(
                        (pg[k] - pj[k]).norm() <= 1e-11 * pj[k].norm().max(1e-300),
                        "λ={lambda} k={k} z={z}"
                    );
                }
            }
        }
    }
}

#[test]
fn documented_values() {
    let z = Complex64::new(0.9, -0.2);
    assert_relative_eq!(
        eval_orthonormal(FamilySpec::Hermite, 0, z).unwrap().re,
        PI.powf(-0.25),
        max_relative = 1e-15
    );
    let t2 = eval_orthonormal(FamilySpec::ChebyshevT, 2, Complex64::new(0.3, 0.0)).unwrap();
    assert_relative_eq!(
        t2.re,
        (2.0 / PI).sqrt() * (2.0 * 0.3f64.acos()).cos(),
        max_relative = 1e-14
    );
    assert_relative_eq!(t2.re, -0.654_265_339_858_349_7, max_relative = 1e-14);
    let nu = 1.5;
    let l0 = eval_orthonormal(FamilySpec::Laguerre { nu }, 0, z).unwrap();
    assert_relative_eq!(
        l0.re,
        libm::tgamma(nu + 1.0).powf(-0.5),
        max_relative = 1e-14
    );
    assert_relative_eq!(
        standard_scale(FamilySpec::Hermite, 0).unwrap(),
        PI.powf(0.25),
        max_relative = 1e-15
    );
    assert_relative_eq!(
        standard_scale(FamilySpec::ChebyshevT, 0).unwrap(),
        PI.sqrt(),
        max_relative = 1e-15
    );
    assert_relative_eq!(
        standard_scale(FamilySpec::ChebyshevT, 3).unwrap(),
        (PI / 2.0).sqrt(),
        max_relative = 1e-15
    );
    assert_relative_eq!(
        standard_scale(FamilySpec::Laguerre { nu: 0.0 }, 2).unwrap(),
        1.0,
        max_relative = 1e-15
    );
    // H_3 = 8x³ - 12x
    let x = Complex64::new(0.4, 0.0);
    let h3 = eval_orthonormal(FamilySpec::Hermite, 3, x).unwrap()
        * standard_scale(FamilySpec::Hermite, 3).unwrap();
    assert_relative_eq!(h3.re, 8.0 * 0.064 - 12.0 * 0.4, max_relative = 1e-14);
}

#[test]
fn invalid_families_rejected() {
    assert!(FamilySpec::laguerre(-1.0).is_err());
    assert!(FamilySpec::jacobi(0.0, -1.2).is_err());
    assert!(FamilySpec::gegenbauer(-0.1).is_err());
    assert!(eval_all(FamilySpec::Hermite, 201, Complex64::new(0.0, 0.0)).is_err());
}

fn family_strategy() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        Just(FamilySpec::Hermite),
        (-0.9f64..4.0).prop_map(|nu| FamilySpec::Laguerre { nu }),
        (-0.9f64..3.0, -0.9f64..3.0).prop_map(|(alpha, beta)| FamilySpec::Jacobi { alpha, beta }),
        (0.0f64..3.0).prop_map(|lambda| FamilySpec::Gegenbauer { lambda }),
        Just(FamilySpec::ChebyshevT),
    ]
}

proptest! {
    #[test]
    fn conjugation_symmetry(family in family_strategy(), re in -3.0f64..3.0, im in -3.0f64..3.0, k in 0usize..40) {
        let z = Complex64::new(re, im);
        let a = eval_orthonormal(family, k, z.conj()).unwrap();
        let b = eval_orthonormal(family, k, z).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-14 * b.norm().max(1e-300));
    }

    #[test]
    fn real_arguments_give_real_values(family in family_strategy(), x in -3.0f64..3.0, k in 0usize..40) {
        prop_assert_eq!(eval_orthonormal(family, k, Complex64::new(x, 0.0)).unwrap().im, 0.0);
    }
}
