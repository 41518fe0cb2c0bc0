//! The acceptance criteria as runnable checks.
//!
//! Each criterion returns a [`CriterionOutcome`] with its verification
//! reports, a one-line summary and the wall time. Randomised criteria draw
//! points from a ChaCha generator seeded per criterion, so a given seed
//! always produces the same points.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ortholab_core::kernels::{
    alpha_max, gamma_k_eval, gegenbauer_reduction_residual, gram_matrix, gram_min_eig,
    hatk_ratio_scan, jacobi_ratio_scan, kernel_closed, kernel_series, EllipseDomain, KernelKind,
    KernelSpec,
};
use ortholab_core::quadrature::{
    chebyshev_boundary_gram, fourier_coefficients, PlanarGridSpec, PlanarWeight,
};
use ortholab_core::summability::{
    hermite_norm_identity, jacobi_membership_report, laguerre_norm_identity, orthogonality_matrix,
    radius_estimate, verdict, OrthogonalityTolerance, ToleranceMode, Verdict, VerificationReport,
};
use ortholab_core::{FamilySpec, SeriesControl};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x0a11_ce5e_ed00_0001;

/// Number of acceptance criteria.
pub const CRITERIA: usize = 12;

/// Planar Gauss–Legendre resolution used by the area-integral criteria.
pub const PLANAR_RESOLUTION: usize = 128;

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub summary: String,
    pub reports: Vec<VerificationReport>,
    pub runtime_ms: f64,
    /// Wall-time limit that is part of the criterion, if any.
    pub time_limit_ms: Option<f64>,
}

impl CriterionOutcome {
    /// `PASS`/`FAIL` line for terminal output.
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {} :: {} ({:.0} ms)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.summary,
            self.runtime_ms
        )
    }
}

pub fn title(id: usize) -> &'static str {
    match id {
        1 => "Mehler kernel: series vs closed form",
        2 => "Hardy-Hille kernel: series vs closed form",
        3 => "Bailey and Gegenbauer kernels: series vs closed form",
        4 => "Hermite planar orthogonality",
        5 => "Laguerre planar orthogonality",
        6 => "Chebyshev orthogonality on ellipse boundaries",
        7 => "Hermite norm identity",
        8 => "Laguerre norm identity",
        9 => "Convergence threshold",
        10 => "Gram matrices are positive semidefinite",
        11 => "Coefficient ratio bounds",
        12 => "Bergman-Selberg basis maxima and tail",
        _ => "unknown",
    }
}

/// Runs one criterion (1..=12).
pub fn run_criterion(id: usize, seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let rng = ChaCha8Rng::seed_from_u64(seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let (pass, summary, reports, limit) = match id {
        1 => mehler(rng),
        2 => hardy_hille(rng),
        3 => bailey_gegenbauer(rng),
        4 => hermite_orthogonality(),
        5 => laguerre_orthogonality(),
        6 => ellipse_orthogonality(),
        7 => hermite_identity(),
        8 => laguerre_identity(),
        9 => threshold(),
        10 => psd(rng),
        11 => ratios(),
        12 => bergman_maxima(),
        _ => (false, format!("no criterion {id}"), Vec::new(), None),
    };
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    let pass = pass && limit.is_none_or(|l| runtime_ms < l);
    CriterionOutcome {
        id,
        title: title(id),
        pass,
        summary,
        reports,
        runtime_ms,
        time_limit_ms: limit,
    }
}

/// Runs every criterion in order.
pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    (1..=CRITERIA).map(|id| run_criterion(id, seed)).collect()
}

type Body = (bool, String, Vec<VerificationReport>, Option<f64>);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn square(rng: &mut ChaCha8Rng, half: f64) -> Complex64 {
    c(rng.gen_range(-half..=half), rng.gen_range(-half..=half))
}

fn disk(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    loop {
        let z = square(rng, r);
        if z.norm() <= r {
            return z;
        }
    }
}

fn in_ellipse(rng: &mut ChaCha8Rng, e: &EllipseDomain) -> Complex64 {
    let (a, b) = (e.semi_major(), e.semi_minor());
    loop {
        let z = c(rng.gen_range(-a..a), rng.gen_range(-b..b));
        if e.contains(z) {
            return z;
        }
    }
}

fn worst(reports: &[VerificationReport]) -> f64 {
    reports.iter().map(|r| r.error()).fold(0.0, f64::max)
}

fn all_pass(reports: &[VerificationReport]) -> bool {
    !reports.is_empty() && reports.iter().all(|r| r.pass)
}

/// Series vs closed form over point pairs; one report per pair.
fn series_vs_closed(
    label: &str,
    spec: &KernelSpec,
    pairs: &[(Complex64, Complex64)],
    k_max: usize,
    tol: f64,
) -> Vec<VerificationReport> {
    let family = spec.family().expect("kernel with a bilinear series");
    pairs
        .par_iter()
        .enumerate()
        .map(|(i, &(z, u))| {
            let name = format!("{label} pair {i}");
            let closed = kernel_closed(spec, z, u);
            let series = kernel_series(family, spec.theta, z, u, k_max, SeriesControl::default());
            match (series, closed) {
                (Ok(s), Ok(k)) => VerificationReport::compare(
                    name,
                    s.value,
                    k,
                    tol,
                    ToleranceMode::Relative,
                    vec![],
                ),
                _ => VerificationReport::compare(
                    name,
                    c(f64::NAN, 0.0),
                    c(0.0, 0.0),
                    tol,
                    ToleranceMode::Relative,
                    vec![ortholab_core::summability::ReportFlag::Domain],
                ),
            }
        })
        .collect()
}

const KERNEL_THETAS: [f64; 3] = [1.5, 2.0, 4.0];

fn mehler(mut rng: ChaCha8Rng) -> Body {
    let mut reports = Vec::new();
    let mut parts = Vec::new();
    for &theta in &KERNEL_THETAS {
        let pairs: Vec<_> = (0..50)
            .map(|_| (square(&mut rng, 1.0), square(&mut rng, 1.0)))
            .collect();
        let spec = KernelSpec::new(KernelKind::HermiteMehler, theta).expect("valid");
        let r = series_vs_closed(&format!("mehler theta={theta}"), &spec, &pairs, 60, 1e-8);
        let long = series_vs_closed(
            &format!("mehler K=200 theta={theta}"),
            &spec,
            &pairs,
            200,
            1e-8,
        );
        parts.push(format!(
            "θ={theta}: max rel {:.1e} (K=200: {:.1e})",
            worst(&r),
            worst(&long)
        ));
        reports.extend(r);
    }
    (all_pass(&reports), parts.join("; "), reports, Some(5_000.0))
}

fn hardy_hille(mut rng: ChaCha8Rng) -> Body {
    let mut reports = Vec::new();
    let mut parts = Vec::new();
    for &nu in &[0.5, 1.5] {
        for &theta in &KERNEL_THETAS {
            let pairs: Vec<_> = (0..50)
                .map(|_| (disk(&mut rng, 2.0), disk(&mut rng, 2.0)))
                .collect();
            let spec =
                KernelSpec::new(KernelKind::LaguerreHardyHille { nu }, theta).expect("valid");
            let r = series_vs_closed(
                &format!("hardy-hille nu={nu} theta={theta}"),
                &spec,
                &pairs,
                60,
                1e-8,
            );
            let long = series_vs_closed("hardy-hille K=200", &spec, &pairs, 200, 1e-8);
            parts.push(format!(
                "ν={nu} θ={theta}: {:.1e} (K=200: {:.1e})",
                worst(&r),
                worst(&long)
            ));
            reports.extend(r);
        }
    }
    (all_pass(&reports), parts.join("; "), reports, None)
}

/// Truncation used for the Jacobi-type series; points are drawn from
/// `E_{θ^{0.9}}`, where the terms decay like `θ^{-0.1 k}`.
pub const JACOBI_SERIES_TERMS: usize = ortholab_core::orthopoly::MAX_DEGREE;

fn bailey_gegenbauer(mut rng: ChaCha8Rng) -> Body {
    let theta = 2.0;
    let inner = EllipseDomain::new(theta)
        .and_then(|e| e.shrunk(0.9))
        .expect("valid");
    let kinds = [
        KernelKind::JacobiBailey {
            alpha: 0.5,
            beta: 0.5,
        },
        KernelKind::JacobiBailey {
            alpha: 0.0,
            beta: 1.0,
        },
        KernelKind::GegenbauerClosed { lambda: 0.0 },
        KernelKind::GegenbauerClosed { lambda: 1.0 },
    ];
    let mut reports = Vec::new();
    let mut parts = Vec::new();
    for kind in kinds {
        let spec = KernelSpec::new(kind, theta).expect("valid");
        let mut pairs = Vec::new();
        while pairs.len() < 30 {
            let (z, u) = (in_ellipse(&mut rng, &inner), in_ellipse(&mut rng, &inner));
            if spec.guard_value(z, u) <= ortholab_core::specfun::HYPERGEOMETRIC_GUARD {
                pairs.push((z, u));
            }
        }
        let r = series_vs_closed(
            &format!("{kind:?}"),
            &spec,
            &pairs,
            JACOBI_SERIES_TERMS,
            1e-7,
        );
        parts.push(format!("{kind:?}: {:.1e}", worst(&r)));
        reports.extend(r);
    }
    for &lambda in &[0.0, 1.0] {
        let spec = KernelSpec::new(
            KernelKind::JacobiBailey {
                alpha: lambda - 0.5,
                beta: lambda - 0.5,
            },
            theta,
        )
        .expect("valid");
        let mut n = 0;
        let mut worst_res: f64 = 0.0;
        while n < 20 {
            let (z, u) = (in_ellipse(&mut rng, &inner), in_ellipse(&mut rng, &inner));
            let g = KernelSpec::new(KernelKind::GegenbauerClosed { lambda }, theta).expect("valid");
            if spec.guard_value(z, u) > 0.97 || g.guard_value(z, u) > 0.97 {
                continue;
            }
            let res = gegenbauer_reduction_residual(theta, lambda, z, u).unwrap_or(f64::INFINITY);
            worst_res = worst_res.max(res);
            reports.push(VerificationReport::compare(
                format!("reduction lambda={lambda} point {n}"),
                c(res, 0.0),
                c(0.0, 0.0),
                1e-8,
                ToleranceMode::Absolute,
                vec![],
            ));
            n += 1;
        }
        parts.push(format!("reduction λ={lambda}: {worst_res:.1e}"));
    }
    (all_pass(&reports), parts.join("; "), reports, None)
}

fn ortho_summary(reports: &[VerificationReport]) -> String {
    let diag = reports
        .iter()
        .filter(|r| r.mode == ToleranceMode::Relative)
        .map(|r| r.rel_err)
        .fold(0.0, f64::max);
    let off = reports
        .iter()
        .filter(|r| r.mode == ToleranceMode::Absolute)
        .map(|r| r.abs_err / r.tolerance)
        .fold(0.0, f64::max);
    format!("diagonal max rel {diag:.1e}; off-diagonal max {off:.1e} of tolerance")
}

fn hermite_orthogonality() -> Body {
    let tol = OrthogonalityTolerance {
        diagonal: 1e-6,
        off_diagonal: 1e-8,
    };
    match orthogonality_matrix(
        PlanarWeight::HermiteTheta { theta: 2.0 },
        4,
        PLANAR_RESOLUTION,
        tol,
    ) {
        Ok(r) => (all_pass(&r), ortho_summary(&r), r, Some(60_000.0)),
        Err(e) => (false, format!("error: {e}"), Vec::new(), Some(60_000.0)),
    }
}

fn laguerre_orthogonality() -> Body {
    let tol = OrthogonalityTolerance {
        diagonal: 1e-4,
        off_diagonal: 1e-6,
    };
    match orthogonality_matrix(
        PlanarWeight::LaguerreTheta {
            theta: 3.0,
            nu: 0.5,
        },
        3,
        PLANAR_RESOLUTION,
        tol,
    ) {
        Ok(r) => (all_pass(&r), ortho_summary(&r), r, None),
        Err(e) => (false, format!("error: {e}"), Vec::new(), None),
    }
}

/// Boundary nodes for the Chebyshev Gram matrix.
pub const ELLIPSE_NODES: usize = 128;

/// Gram entries of `w^k + w^{-k}` on `∂E_θ` for k, m ≤ k_max.
pub fn ellipse_gram_reports(
    theta: f64,
    k_max: usize,
    n_nodes: usize,
    tol: f64,
) -> Vec<VerificationReport> {
    let mut reports = Vec::new();
    for k in 0..=k_max {
        for m in 0..=k_max {
            let name = format!("ellipse theta={theta} ({k},{m})");
            let value = chebyshev_boundary_gram(theta, k, m, n_nodes);
            let expected = match (k == m, k) {
                (false, _) => 0.0,
                (true, 0) => 4.0,
                (true, k) => theta.powi(k as i32) + theta.powi(-(k as i32)),
            };
            let mode = if k == m {
                ToleranceMode::Relative
            } else {
                ToleranceMode::Absolute
            };
            reports.push(match value {
                Ok(v) => VerificationReport::compare(name, v, c(expected, 0.0), tol, mode, vec![]),
                Err(_) => VerificationReport::compare(
                    name,
                    c(f64::NAN, 0.0),
                    c(expected, 0.0),
                    tol,
                    mode,
                    vec![ortholab_core::summability::ReportFlag::Domain],
                ),
            });
        }
    }
    reports
}

fn ellipse_orthogonality() -> Body {
    let reports: Vec<_> = KERNEL_THETAS
        .iter()
        .flat_map(|&t| ellipse_gram_reports(t, 10, ELLIPSE_NODES, 1e-10))
        .collect();
    let summary = format!(
        "{} entries, worst error {:.1e}",
        reports.len(),
        worst(&reports)
    );
    (all_pass(&reports), summary, reports, Some(1_000.0))
}

/// Coefficients used on the sum side of the norm identities.
pub const IDENTITY_TERMS: usize = 60;

fn hermite_identity() -> Body {
    let mut reports = Vec::new();
    for &t in &[0.2, 0.4] {
        for &theta in &KERNEL_THETAS {
            let grid = PlanarGridSpec::hermite(theta, 0, PLANAR_RESOLUTION).expect("valid");
            match hermite_norm_identity(t, theta, grid, IDENTITY_TERMS) {
                Ok(r) => reports.push(r.report),
                Err(e) => return (false, format!("t={t} θ={theta}: {e}"), reports, None),
            }
        }
    }
    let summary = format!("6 cases, worst rel {:.1e}", worst(&reports));
    (all_pass(&reports), summary, reports, None)
}

fn laguerre_identity() -> Body {
    let mut reports = Vec::new();
    for &t in &[0.2, 0.3] {
        for &theta in &[2.0, 3.0] {
            for &nu in &[0.5, 1.5] {
                let grid =
                    PlanarGridSpec::laguerre(theta, 0, 0.0, PLANAR_RESOLUTION).expect("valid");
                match laguerre_norm_identity(t, theta, nu, grid, IDENTITY_TERMS) {
                    Ok(r) => reports.push(r.report),
                    Err(e) => {
                        return (false, format!("t={t} θ={theta} ν={nu}: {e}"), reports, None)
                    }
                }
            }
        }
    }
    let summary = format!("8 cases, worst rel {:.1e}", worst(&reports));
    (all_pass(&reports), summary, reports, None)
}

/// Generating function of the Laguerre family, `(1-t)^{-ν-1} e^{-xt/(1-t)}`.
pub fn laguerre_generating(t: f64, nu: f64) -> impl Fn(f64) -> Complex64 {
    move |x| {
        c(
            ((1.0 - t).ln() * (-nu - 1.0) - x * t / (1.0 - t)).exp(),
            0.0,
        )
    }
}

/// Poisson kernel `(1-t²)/(1-2tz+t²)`, with a pole at `(1+t²)/(2t)`.
pub fn poisson(t: f64) -> impl Fn(Complex64) -> Complex64 {
    move |z| c(1.0 - t * t, 0.0) / (1.0 - 2.0 * t * z + t * t)
}

fn threshold() -> Body {
    let mut reports = Vec::new();
    let mut parts = Vec::new();
    let mut ok = true;

    let family = FamilySpec::Laguerre { nu: 0.5 };
    match fourier_coefficients(laguerre_generating(0.5, 0.5), family, 64, 160)
        .and_then(|cs| radius_estimate(&cs).map(|r| (cs, r)))
    {
        Ok((cs, r)) => {
            let v39 = verdict(&cs, 3.9, &r).ok();
            let v41 = verdict(&cs, 4.1, &r).ok();
            let radius_ok = (3.8..=4.2).contains(&r.value);
            ok &= radius_ok && v39 == Some(Verdict::Converged) && v41 == Some(Verdict::Diverging);
            reports.push(VerificationReport::compare(
                "laguerre t=0.5 radius",
                c(r.value, 0.0),
                c(4.0, 0.0),
                0.05,
                ToleranceMode::Relative,
                vec![],
            ));
            parts.push(format!(
                "radius {:.4}, θ=3.9 {:?}, θ=4.1 {:?}",
                r.value, v39, v41
            ));
        }
        Err(e) => {
            ok = false;
            parts.push(format!("laguerre: {e}"));
        }
    }

    let f = poisson(0.5);
    let pole = c(1.25, 0.0);
    let residual = EllipseDomain::new(4.0)
        .map(|e| e.boundary_residual(pole).abs())
        .unwrap_or(f64::INFINITY);
    ok &= residual <= 1e-12;
    reports.push(VerificationReport::compare(
        "pole on boundary of E_4",
        c(residual, 0.0),
        c(0.0, 0.0),
        1e-12,
        ToleranceMode::Absolute,
        vec![],
    ));
    for (theta, member) in [(3.5, true), (4.5, false)] {
        match jacobi_membership_report(&f, FamilySpec::ChebyshevT, theta, 64, 1024) {
            Ok(m) => {
                ok &= m.boundary_member == member && m.sum_member == member && m.agree;
                parts.push(format!(
                    "θ={theta}: boundary {} sum {:?} defect {:.1e}",
                    m.boundary_member, m.verdict, m.holomorphy_defect
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("θ={theta}: {e}"));
            }
        }
    }
    parts.push(format!("pole residual {residual:.1e}"));
    (ok && all_pass(&reports), parts.join("; "), reports, None)
}

/// The kernels of the PSD criterion at θ = 2.
pub fn psd_kinds() -> Vec<KernelKind> {
    vec![
        KernelKind::HermiteMehler,
        KernelKind::LaguerreHardyHille { nu: 0.5 },
        KernelKind::JacobiBailey {
            alpha: 0.5,
            beta: 0.5,
        },
        KernelKind::GegenbauerClosed { lambda: 1.0 },
        KernelKind::HatK { lambda: 0.5 },
        KernelKind::BergmanSelberg { lambda: 1.0 },
        KernelKind::ReducedHermite,
        KernelKind::ReducedLaguerre { nu: 0.5 },
    ]
}

/// Eight points in the kernel's domain with every pair passing the guards.
fn psd_points(rng: &mut ChaCha8Rng, spec: &KernelSpec) -> Vec<Complex64> {
    let theta = spec.theta;
    loop {
        let pts: Vec<Complex64> = (0..8)
            .map(|_| match spec.kind {
                KernelKind::HermiteMehler | KernelKind::ReducedHermite => square(rng, 1.0),
                KernelKind::LaguerreHardyHille { .. } | KernelKind::ReducedLaguerre { .. } => {
                    disk(rng, 2.0)
                }
                KernelKind::BergmanSelberg { .. } => {
                    disk(rng, 0.95 * ortholab_core::kernels::bergman_radius(theta))
                }
                _ => {
                    let e = EllipseDomain::new(theta)
                        .and_then(|e| e.shrunk(0.9))
                        .expect("valid");
                    in_ellipse(rng, &e)
                }
            })
            .collect();
        let guarded = pts.iter().all(|&z| {
            pts.iter()
                .all(|&u| spec.guard_value(z, u) <= ortholab_core::specfun::HYPERGEOMETRIC_GUARD)
        });
        if guarded {
            return pts;
        }
    }
}

fn psd(mut rng: ChaCha8Rng) -> Body {
    let theta = 2.0;
    let mut reports = Vec::new();
    let mut parts = Vec::new();
    for kind in psd_kinds() {
        let spec = KernelSpec::new(kind, theta).expect("valid");
        let sets: Vec<Vec<Complex64>> = (0..20).map(|_| psd_points(&mut rng, &spec)).collect();
        let mut min_ratio = f64::INFINITY;
        for (i, pts) in sets.iter().enumerate() {
            let trace =
                gram_matrix(&spec, pts).map(|g| (0..8).map(|j| g[j * 8 + j].re).sum::<f64>());
            let eig = gram_min_eig(&spec, pts);
            let (value, flags) = match (eig, trace) {
                (Ok(e), Ok(t)) => (e / t, vec![]),
                _ => (
                    f64::NAN,
                    vec![ortholab_core::summability::ReportFlag::Domain],
                ),
            };
            min_ratio = min_ratio.min(value);
            let shortfall = (-value).max(0.0);
            reports.push(VerificationReport::compare(
                format!("{kind:?} set {i}: -min_eig/trace"),
                c(if value.is_nan() { f64::NAN } else { shortfall }, 0.0),
                c(0.0, 0.0),
                1e-10,
                ToleranceMode::Absolute,
                flags,
            ));
        }
        parts.push(format!("{kind:?}: min λmin/tr {min_ratio:.1e}"));
    }
    (all_pass(&reports), parts.join("; "), reports, None)
}

fn ratios() -> Body {
    let mut reports = Vec::new();
    let mut parts = Vec::new();
    let mut ok = true;
    match hatk_ratio_scan(0.0, 1.0, 200) {
        Ok(s) => {
            ok &= s.sup < 10.0 && s.inf > 0.0;
            reports.push(VerificationReport::compare(
                "hatk ratio (0,1) at k=200",
                c(s.last, 0.0),
                c(1.0, 0.0),
                0.02,
                ToleranceMode::Absolute,
                vec![],
            ));
            parts.push(format!(
                "hatk last {:.5} inf {:.4} sup {:.4}",
                s.last, s.inf, s.sup
            ));
        }
        Err(e) => {
            ok = false;
            parts.push(format!("hatk: {e}"));
        }
    }
    match (
        jacobi_ratio_scan(-0.5, -0.5, 0.5, 100),
        jacobi_ratio_scan(-0.5, -0.5, 0.5, 200),
    ) {
        (Ok(a), Ok(b)) => {
            ok &= a.sup.is_finite() && a.sup > 0.0;
            reports.push(VerificationReport::compare(
                "jacobi ratio sup, kl_max 200 vs 100",
                c(b.sup, 0.0),
                c(a.sup, 0.0),
                0.05,
                ToleranceMode::Relative,
                vec![],
            ));
            parts.push(format!("jacobi sup {:.6} -> {:.6}", a.sup, b.sup));
        }
        _ => {
            ok = false;
            parts.push("jacobi scan failed".into());
        }
    }
    (ok && all_pass(&reports), parts.join("; "), reports, None)
}

/// `Σ_{k>200} alpha_max(θ, λ, k)²`, summed until the terms vanish.
pub fn alpha_tail(theta: f64, lambda: f64) -> f64 {
    let mut tail = 0.0;
    for k in 201..20_000 {
        let a = alpha_max(theta, lambda, k).unwrap_or(f64::NAN);
        tail += a * a;
        if a * a < 1e-30 * tail.max(1e-300) {
            break;
        }
    }
    tail
}

fn bergman_maxima() -> Body {
    let (theta, lambda) = (2.0, 1.0);
    let e = EllipseDomain::new(theta).expect("valid");
    let n = 4096;
    let nodes: Vec<Complex64> = (0..n)
        .map(|j| e.boundary_point(2.0 * std::f64::consts::PI * j as f64 / n as f64))
        .collect();
    let mut reports = Vec::new();
    for k in 0..=20 {
        let grid_max = nodes
            .iter()
            .map(|&z| {
                gamma_k_eval(theta, lambda, k, z)
                    .map(|v| v.norm())
                    .unwrap_or(f64::NAN)
            })
            .fold(0.0, f64::max);
        let a = alpha_max(theta, lambda, k).unwrap_or(f64::NAN);
        reports.push(VerificationReport::compare(
            format!("alpha_max k={k}"),
            c(a, 0.0),
            c(grid_max, 0.0),
            1e-10,
            ToleranceMode::Relative,
            vec![],
        ));
    }
    let mut parts = vec![format!("k ≤ 20 worst rel {:.1e}", worst(&reports))];
    for &t in &[3.0, 4.0] {
        let tail = alpha_tail(t, lambda);
        reports.push(VerificationReport::compare(
            format!("alpha_max² tail beyond k=200, theta={t}"),
            c(tail, 0.0),
            c(0.0, 0.0),
            1e-12,
            ToleranceMode::Absolute,
            vec![],
        ));
        parts.push(format!("tail θ={t}: {tail:.1e}"));
    }
    parts.push(format!(
        "tail θ=2 (informational): {:.1e}",
        alpha_tail(2.0, lambda)
    ));
    (all_pass(&reports), parts.join("; "), reports, None)
}
