//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when any fails, 2 on usage
//! errors, 3 on I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use ortholab_core::kernels::{
    gram_matrix, gram_min_eig, kernel_closed, kernel_series, EllipseDomain, KernelKind, KernelSpec,
};
use ortholab_core::quadrature::{
    fourier_coefficients, PlanarGridSpec, PlanarWeight, MAX_RULE_ORDER,
};
use ortholab_core::specfun::HYPERGEOMETRIC_GUARD;
use ortholab_core::summability::{
    hermite_norm_identity, laguerre_norm_identity, orthogonality_matrix, radius_estimate, verdict,
    weighted_sum, CoefficientSeries, OrthogonalityTolerance, RadiusStatus, ReportFlag,
    ToleranceMode, Verdict, VerificationReport,
};
use ortholab_core::{FamilySpec, SeriesControl};

use crate::output::{write_json, write_report_csv, write_rows_csv, Document};
use crate::suite::{self, CriterionOutcome};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ortholab",
    version,
    about = "Verification suites for classical orthogonal expansions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// JSON report path; stdout when omitted.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// CSV table path.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare kernel series with closed forms, or check Gram matrices.
    KernelCheck(KernelCheckArgs),
    /// Planar orthogonality matrix for Hermite or Laguerre polynomials.
    OrthoVerify(OrthoArgs),
    /// Gram matrix of `w^k + w^{-k}` on an ellipse boundary.
    EllipseOrtho(EllipseArgs),
    /// Weighted coefficient sums and verdicts for a generating family.
    Summability(SummabilityArgs),
    /// Coefficient sum against the planar integral for a generating family.
    NormIdentity(NormArgs),
    /// Every acceptance criterion.
    FullSuite(SuiteArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelName {
    Mehler,
    HardyHille,
    Bailey,
    Gegenbauer,
    Hatk,
    BergmanSelberg,
    ReducedHermite,
    ReducedLaguerre,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct KernelCheckArgs {
    #[arg(long, value_enum)]
    pub kernel: KernelName,
    #[arg(long, default_value_t = 2.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.5)]
    pub nu: f64,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.5)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Series truncation.
    #[arg(long, default_value_t = 60)]
    pub kmax: usize,
    /// Random point pairs (series kernels) or 8-point sets (Gram check).
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = suite::DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlanarFamily {
    Hermite,
    Laguerre,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OrthoArgs {
    #[arg(long, value_enum)]
    pub family: PlanarFamily,
    #[arg(long, default_value_t = 2.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.5)]
    pub nu: f64,
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    #[arg(long, default_value_t = suite::PLANAR_RESOLUTION)]
    pub resolution: usize,
    /// Diagonal relative tolerance; 1e-6 (Hermite) or 1e-4 (Laguerre).
    #[arg(long)]
    pub diag_tol: Option<f64>,
    /// Off-diagonal tolerance as a fraction of the largest diagonal entry;
    /// 1e-8 (Hermite) or 1e-6 (Laguerre).
    #[arg(long)]
    pub off_tol: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EllipseArgs {
    #[arg(long, default_value_t = 2.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 10)]
    pub kmax: usize,
    #[arg(long, default_value_t = suite::ELLIPSE_NODES)]
    pub nodes: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesFamily {
    /// `e^{2xt - t²}`.
    Hermite,
    /// `(1-t)^{-ν-1} e^{-xt/(1-t)}`.
    Laguerre,
    /// Poisson kernel `(1-t²)/(1-2xt+t²)` in Chebyshev polynomials.
    Chebyshev,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SummabilityArgs {
    #[arg(long, value_enum)]
    pub family: SeriesFamily,
    #[arg(long, default_value_t = 0.5)]
    pub nu: f64,
    /// Generating-function parameter t.
    #[arg(long, default_value_t = 0.5)]
    pub gen_t: f64,
    #[arg(long, value_delimiter = ',', default_values_t = vec![2.0, 3.0, 4.5])]
    pub theta_grid: Vec<f64>,
    #[arg(long, default_value_t = 64)]
    pub kmax: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NormArgs {
    #[arg(long, value_enum)]
    pub family: PlanarFamily,
    #[arg(long, default_value_t = 0.2)]
    pub t: f64,
    #[arg(long, default_value_t = 2.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.5)]
    pub nu: f64,
    #[arg(long, default_value_t = suite::IDENTITY_TERMS)]
    pub kmax: usize,
    #[arg(long, default_value_t = suite::PLANAR_RESOLUTION)]
    pub resolution: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = suite::DEFAULT_SEED)]
    pub seed: u64,
    /// Subset of criteria to run, e.g. `4,6,9`.
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Failure that ends a run before a report is written.
#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

fn usage(e: ortholab_core::Error) -> RunError {
    RunError::Usage(e.to_string())
}

/// Parses `argv`, runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            });
        }
    };
    configure_threads();
    match execute(&cli.command) {
        Ok(true) => ExitCode::from(EXIT_PASS),
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(RunError::Io(e)) => {
            eprintln!("I/O error: {e}");
            ExitCode::from(EXIT_IO)
        }
    }
}

/// Caps the rayon pool at `ORTHOLAB_THREADS` workers when set.
fn configure_threads() {
    if let Some(n) = std::env::var("ORTHOLAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

/// Runs a parsed command; `Ok(pass)` on completion.
pub fn execute(command: &Command) -> Result<bool, RunError> {
    match command {
        Command::KernelCheck(a) => kernel_check(a),
        Command::OrthoVerify(a) => ortho_verify(a),
        Command::EllipseOrtho(a) => ellipse_ortho(a),
        Command::Summability(a) => summability(a),
        Command::NormIdentity(a) => norm_identity(a),
        Command::FullSuite(a) => full_suite(a),
    }
}

fn finish<C: Serialize, X: Serialize>(
    command: &str,
    config: &C,
    out: &OutputArgs,
    reports: &[VerificationReport],
    details: Option<X>,
) -> Result<bool, RunError> {
    write_json(
        &Document::new(command, config, reports, details),
        out.json.as_deref(),
    )?;
    if let Some(p) = &out.csv {
        write_report_csv(reports, p)?;
    }
    Ok(reports.iter().all(|r| r.pass))
}

fn kernel_kind(a: &KernelCheckArgs) -> KernelKind {
    match a.kernel {
        KernelName::Mehler => KernelKind::HermiteMehler,
        KernelName::HardyHille => KernelKind::LaguerreHardyHille { nu: a.nu },
        KernelName::Bailey => KernelKind::JacobiBailey {
            alpha: a.alpha,
            beta: a.beta,
        },
        KernelName::Gegenbauer => KernelKind::GegenbauerClosed { lambda: a.lambda },
        KernelName::Hatk => KernelKind::HatK { lambda: a.lambda },
        KernelName::BergmanSelberg => KernelKind::BergmanSelberg { lambda: a.lambda },
        KernelName::ReducedHermite => KernelKind::ReducedHermite,
        KernelName::ReducedLaguerre => KernelKind::ReducedLaguerre { nu: a.nu },
    }
}

/// A random point where the kernel is defined: the square |Re|, |Im| ≤ 1 for
/// Hermite kernels, the disk |z| ≤ 2 for Laguerre kernels, 95% of the disk
/// for Bergman–Selberg and `E_{θ^{0.9}}` otherwise.
fn sample_point(rng: &mut ChaCha8Rng, spec: &KernelSpec) -> Complex64 {
    let uniform =
        |rng: &mut ChaCha8Rng, h: f64| Complex64::new(rng.gen_range(-h..=h), rng.gen_range(-h..=h));
    match spec.kind {
        KernelKind::HermiteMehler | KernelKind::ReducedHermite => uniform(rng, 1.0),
        KernelKind::LaguerreHardyHille { .. } | KernelKind::ReducedLaguerre { .. } => loop {
            let z = uniform(rng, 2.0);
            if z.norm() <= 2.0 {
                return z;
            }
        },
        KernelKind::BergmanSelberg { .. } => {
            let r = 0.95 * ortholab_core::kernels::bergman_radius(spec.theta);
            loop {
                let z = uniform(rng, r);
                if z.norm() <= r {
                    return z;
                }
            }
        }
        _ => {
            let e = EllipseDomain::new(spec.theta)
                .and_then(|e| e.shrunk(0.9))
                .expect("theta validated");
            let (a, b) = (e.semi_major(), e.semi_minor());
            loop {
                let z = Complex64::new(rng.gen_range(-a..a), rng.gen_range(-b..b));
                if e.contains(z) {
                    return z;
                }
            }
        }
    }
}

fn guarded_pair(rng: &mut ChaCha8Rng, spec: &KernelSpec) -> (Complex64, Complex64) {
    loop {
        let (z, u) = (sample_point(rng, spec), sample_point(rng, spec));
        if spec.guard_value(z, u) <= HYPERGEOMETRIC_GUARD {
            return (z, u);
        }
    }
}

fn kernel_check(a: &KernelCheckArgs) -> Result<bool, RunError> {
    let spec = KernelSpec::new(kernel_kind(a), a.theta).map_err(usage)?;
    if a.kmax > ortholab_core::orthopoly::MAX_DEGREE {
        return Err(RunError::Usage(format!(
            "--kmax exceeds {}",
            ortholab_core::orthopoly::MAX_DEGREE
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut reports = Vec::new();
    match spec.family() {
        Some(family) => {
            for i in 0..a.points {
                let (z, u) = guarded_pair(&mut rng, &spec);
                let name = format!("{:?} series vs closed form, pair {i}", spec.kind);
                let s = kernel_series(family, spec.theta, z, u, a.kmax, SeriesControl::default());
                let k = kernel_closed(&spec, z, u);
                reports.push(match (s, k) {
                    (Ok(s), Ok(k)) => VerificationReport::compare(
                        name,
                        s.value,
                        k,
                        a.tol,
                        ToleranceMode::Relative,
                        vec![],
                    ),
                    _ => failed(name, a.tol, ToleranceMode::Relative),
                });
            }
        }
        None => {
            // kernels without a bilinear series: Gram matrices must be PSD
            for i in 0..a.points {
                let pts: Vec<Complex64> = loop {
                    let p: Vec<_> = (0..8).map(|_| sample_point(&mut rng, &spec)).collect();
                    if p.iter().all(|&z| {
                        p.iter()
                            .all(|&u| spec.guard_value(z, u) <= HYPERGEOMETRIC_GUARD)
                    }) {
                        break p;
                    }
                };
                let name = format!("{:?} gram set {i}: max(0, -min_eig/trace)", spec.kind);
                let trace =
                    gram_matrix(&spec, &pts).map(|g| (0..8).map(|j| g[j * 8 + j].re).sum::<f64>());
                reports.push(match (gram_min_eig(&spec, &pts), trace) {
                    (Ok(e), Ok(t)) => VerificationReport::compare(
                        name,
                        Complex64::new((-e / t).max(0.0), 0.0),
                        Complex64::new(0.0, 0.0),
                        1e-10,
                        ToleranceMode::Absolute,
                        vec![],
                    ),
                    _ => failed(name, 1e-10, ToleranceMode::Absolute),
                });
            }
        }
    }
    finish("kernel-check", a, &a.out, &reports, None::<()>)
}

fn failed(name: String, tol: f64, mode: ToleranceMode) -> VerificationReport {
    VerificationReport::compare(
        name,
        Complex64::new(f64::NAN, 0.0),
        Complex64::new(0.0, 0.0),
        tol,
        mode,
        vec![ReportFlag::Domain],
    )
}

fn ortho_verify(a: &OrthoArgs) -> Result<bool, RunError> {
    let (weight, diag, off) = match a.family {
        PlanarFamily::Hermite => (PlanarWeight::HermiteTheta { theta: a.theta }, 1e-6, 1e-8),
        PlanarFamily::Laguerre => (
            PlanarWeight::LaguerreTheta {
                theta: a.theta,
                nu: a.nu,
            },
            1e-4,
            1e-6,
        ),
    };
    let tol = OrthogonalityTolerance {
        diagonal: a.diag_tol.unwrap_or(diag),
        off_diagonal: a.off_tol.unwrap_or(off),
    };
    let reports = orthogonality_matrix(weight, a.kmax, a.resolution, tol).map_err(usage)?;
    finish("ortho-verify", a, &a.out, &reports, None::<()>)
}

fn ellipse_ortho(a: &EllipseArgs) -> Result<bool, RunError> {
    ortholab_core::quadrature::EllipseContour::new(a.theta, a.nodes).map_err(usage)?;
    let reports = suite::ellipse_gram_reports(a.theta, a.kmax, a.nodes, a.tol);
    finish("ellipse-ortho", a, &a.out, &reports, None::<()>)
}

/// Closed-form orthonormal coefficients and threshold `θ*` of a generating
/// family.
fn analytic_family(a: &SummabilityArgs) -> Result<(FamilySpec, Vec<f64>, f64), RunError> {
    let t = a.gen_t;
    let lg = |x: f64| ortholab_core::specfun::log_gamma(x).unwrap_or(f64::NAN);
    let sign = |k: usize, mag: f64| if t < 0.0 && k % 2 == 1 { -mag } else { mag };
    let coeff = |k: usize, ln_mag: f64| if t == 0.0 { 0.0 } else { sign(k, ln_mag.exp()) };
    match a.family {
        SeriesFamily::Hermite => {
            let lrp = 0.5 * std::f64::consts::PI.ln();
            let c = (0..=a.kmax)
                .map(|k| {
                    let kf = k as f64;
                    if k == 0 {
                        return (0.5 * lrp).exp();
                    }
                    coeff(
                        k,
                        kf * t.abs().ln() + 0.5 * (lrp + kf * 2f64.ln() - lg(kf + 1.0)),
                    )
                })
                .collect();
            Ok((FamilySpec::Hermite, c, f64::INFINITY))
        }
        SeriesFamily::Laguerre => {
            if !(t.abs() < 1.0) {
                return Err(RunError::Usage("laguerre family needs |t| < 1".into()));
            }
            let family = FamilySpec::laguerre(a.nu).map_err(usage)?;
            let c = (0..=a.kmax)
                .map(|k| {
                    let kf = k as f64;
                    if k == 0 {
                        return (0.5 * lg(a.nu + 1.0)).exp();
                    }
                    coeff(
                        k,
                        kf * t.abs().ln() + 0.5 * (lg(kf + a.nu + 1.0) - lg(kf + 1.0)),
                    )
                })
                .collect();
            Ok((family, c, 1.0 / (t * t)))
        }
        SeriesFamily::Chebyshev => {
            if !(t.abs() < 1.0) {
                return Err(RunError::Usage("chebyshev family needs |t| < 1".into()));
            }
            let pi = std::f64::consts::PI;
            let c = (0..=a.kmax)
                .map(|k| {
                    if k == 0 {
                        pi.sqrt()
                    } else {
                        coeff(k, 0.5 * (2.0 * pi).ln() + k as f64 * t.abs().ln())
                    }
                })
                .collect();
            Ok((FamilySpec::ChebyshevT, c, 1.0 / (t * t)))
        }
    }
}

fn generating(a: &SummabilityArgs) -> impl Fn(f64) -> Complex64 {
    let (family, t, nu) = (a.family, a.gen_t, a.nu);
    move |x| {
        let v = match family {
            SeriesFamily::Hermite => (2.0 * x * t - t * t).exp(),
            SeriesFamily::Laguerre => ((1.0 - t).ln() * (-nu - 1.0) - x * t / (1.0 - t)).exp(),
            SeriesFamily::Chebyshev => (1.0 - t * t) / (1.0 - 2.0 * t * x + t * t),
        };
        Complex64::new(v, 0.0)
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Converged => "converged",
        Verdict::Diverging => "diverging",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn radius_status_name(s: RadiusStatus) -> &'static str {
    match s {
        RadiusStatus::Finite => "finite",
        RadiusStatus::Infinite => "infinite",
        RadiusStatus::Inconclusive => "inconclusive",
    }
}

fn verdict_code(v: Verdict) -> f64 {
    match v {
        Verdict::Converged => 0.0,
        Verdict::Diverging => 1.0,
        Verdict::Inconclusive => 2.0,
    }
}

/// Coefficients compared with their closed forms up to this index.
const GATE_TERMS: usize = 40;

#[derive(Debug, Serialize)]
pub struct ThetaRow {
    pub theta: f64,
    pub verdict: &'static str,
    pub expected_verdict: &'static str,
    /// Partial sum at the last resolvable index.
    pub partial_sum: f64,
    pub last_index: usize,
    pub overflow: bool,
}

#[derive(Debug, Serialize)]
pub struct SummabilityDetails {
    pub radius: f64,
    pub radius_status: &'static str,
    pub expected_radius: f64,
    pub thetas: Vec<ThetaRow>,
}

fn summability(a: &SummabilityArgs) -> Result<bool, RunError> {
    if a.theta_grid.iter().any(|&t| !(t > 1.0) || !t.is_finite()) {
        return Err(RunError::Usage(
            "--theta-grid values must be finite and > 1".into(),
        ));
    }
    if a.kmax < 16 || a.kmax > ortholab_core::orthopoly::MAX_DEGREE {
        return Err(RunError::Usage("--kmax must lie in 16..=200".into()));
    }
    let (family, analytic, expected_radius) = analytic_family(a)?;
    let order = (2 * a.kmax + 32).min(MAX_RULE_ORDER);
    let quad = fourier_coefficients(generating(a), family, a.kmax, order).map_err(usage)?;
    let exact = CoefficientSeries::from_values(
        family,
        analytic.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
    )
    .map_err(usage)?;

    let mut reports = Vec::new();
    let norm = analytic.iter().map(|v| v * v).sum::<f64>().sqrt();
    let gate_tol = |a: f64| 1e-9 * a.abs() + 1e-13 * norm;
    let gated = a.kmax.min(GATE_TERMS) + 1;
    for (k, (&value, &exact)) in quad.values.iter().zip(&analytic).take(gated).enumerate() {
        let tol = gate_tol(exact);
        reports.push(VerificationReport::compare(
            format!("coefficient k={k}"),
            value,
            Complex64::new(exact, 0.0),
            tol,
            ToleranceMode::Absolute,
            vec![],
        ));
    }

    let radius = radius_estimate(&quad).map_err(usage)?;
    if expected_radius.is_finite() {
        reports.push(VerificationReport::compare(
            "radius estimate",
            Complex64::new(radius.value, 0.0),
            Complex64::new(expected_radius, 0.0),
            0.05,
            ToleranceMode::Relative,
            vec![],
        ));
    } else {
        let infinite = if radius.status == RadiusStatus::Infinite {
            1.0
        } else {
            0.0
        };
        reports.push(VerificationReport::compare(
            "radius estimate is infinite",
            Complex64::new(infinite, 0.0),
            Complex64::new(1.0, 0.0),
            0.0,
            ToleranceMode::Absolute,
            vec![],
        ));
    }

    let last = quad.resolvable().last().copied().unwrap_or(0);
    let mut rows = Vec::new();
    for &theta in &a.theta_grid {
        let v = verdict(&quad, theta, &radius).map_err(usage)?;
        let ratio = theta / expected_radius;
        let expected = if ratio <= 0.99 {
            Verdict::Converged
        } else if ratio >= 1.01 {
            Verdict::Diverging
        } else {
            Verdict::Inconclusive
        };
        reports.push(VerificationReport::compare(
            format!("verdict theta={theta} (0 converged, 1 diverging, 2 inconclusive)"),
            Complex64::new(verdict_code(v), 0.0),
            Complex64::new(verdict_code(expected), 0.0),
            0.0,
            ToleranceMode::Absolute,
            vec![],
        ));
        let q = weighted_sum(&quad, theta, a.kmax).map_err(usage)?;
        let e = weighted_sum(&exact, theta, a.kmax).map_err(usage)?;
        let flags = if q.overflow || e.overflow {
            vec![ReportFlag::Overflow]
        } else {
            vec![]
        };
        // error bound implied by the coefficient gate: |q² - a²| ≤ 2|a|g + g²
        let bound: f64 = (0..=last)
            .map(|k| {
                let g = gate_tol(analytic[k]);
                (k as f64 * theta.ln()).exp() * (2.0 * analytic[k].abs() * g + g * g)
            })
            .sum();
        reports.push(VerificationReport::compare(
            format!("partial sum theta={theta} k={last}"),
            Complex64::new(q.partial_sums[last], 0.0),
            Complex64::new(e.partial_sums[last], 0.0),
            bound,
            ToleranceMode::Absolute,
            flags,
        ));
        rows.push(ThetaRow {
            theta,
            verdict: verdict_name(v),
            expected_verdict: verdict_name(expected),
            partial_sum: q.partial_sums[last],
            last_index: last,
            overflow: q.overflow,
        });
    }

    let details = SummabilityDetails {
        radius: radius.value,
        radius_status: radius_status_name(radius.status),
        expected_radius,
        thetas: rows,
    };
    write_json(
        &Document::new("summability", a, &reports, Some(&details)),
        a.out.json.as_deref(),
    )?;
    if let Some(p) = &a.out.csv {
        write_rows_csv(&details.thetas, p)?;
    }
    Ok(reports.iter().all(|r| r.pass))
}

#[derive(Debug, Serialize)]
pub struct NormDetails {
    pub closed_form: f64,
    pub verdict: &'static str,
    pub tail_estimate: f64,
    pub gate_ratio: f64,
}

fn norm_identity(a: &NormArgs) -> Result<bool, RunError> {
    let r = match a.family {
        PlanarFamily::Hermite => {
            if !(a.t.abs() <= 0.6) {
                return Err(RunError::Usage("hermite identity needs |t| <= 0.6".into()));
            }
            let grid = PlanarGridSpec::hermite(a.theta, 0, a.resolution).map_err(usage)?;
            hermite_norm_identity(a.t, a.theta, grid, a.kmax).map_err(usage)?
        }
        PlanarFamily::Laguerre => {
            let grid = PlanarGridSpec::laguerre(a.theta, 0, 0.0, a.resolution).map_err(usage)?;
            laguerre_norm_identity(a.t, a.theta, a.nu, grid, a.kmax).map_err(usage)?
        }
    };
    let mut report = r.report.clone();
    if a.family == PlanarFamily::Laguerre {
        // the Laguerre identity is checked at the looser planar accuracy
        report = VerificationReport::compare(
            report.name,
            report.computed,
            report.expected,
            1e-4,
            ToleranceMode::Relative,
            report.flags,
        );
    }
    let details = NormDetails {
        closed_form: r.closed_form,
        verdict: verdict_name(r.verdict),
        tail_estimate: r.tail_estimate,
        gate_ratio: r.gate_ratio,
    };
    finish("norm-identity", a, &a.out, &[report], Some(details))
}

#[derive(Debug, Serialize)]
pub struct CriterionRecord {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub summary: String,
    pub runtime_ms: f64,
    pub time_limit_ms: Option<f64>,
    pub report_count: usize,
}

impl From<&CriterionOutcome> for CriterionRecord {
    fn from(o: &CriterionOutcome) -> Self {
        CriterionRecord {
            id: o.id,
            title: o.title,
            pass: o.pass,
            summary: o.summary.clone(),
            runtime_ms: o.runtime_ms,
            time_limit_ms: o.time_limit_ms,
            report_count: o.reports.len(),
        }
    }
}

fn full_suite(a: &SuiteArgs) -> Result<bool, RunError> {
    let ids: Vec<usize> = if a.criteria.is_empty() {
        (1..=suite::CRITERIA).collect()
    } else {
        a.criteria.clone()
    };
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > suite::CRITERIA) {
        return Err(RunError::Usage(format!("no criterion {bad}")));
    }
    let outcomes: Vec<CriterionOutcome> = ids
        .iter()
        .map(|&id| suite::run_criterion(id, a.seed))
        .collect();
    for o in &outcomes {
        if a.out.json.is_some() {
            println!("{}", o.line());
        } else {
            eprintln!("{}", o.line());
        }
    }
    let reports: Vec<VerificationReport> = outcomes
        .iter()
        .flat_map(|o| {
            o.reports.iter().map(move |r| {
                let mut r = r.clone();
                r.name = format!("criterion {}: {}", o.id, r.name);
                r
            })
        })
        .collect();
    let records: Vec<CriterionRecord> = outcomes.iter().map(CriterionRecord::from).collect();
    write_json(
        &Document::new("full-suite", a, &reports, Some(&records)),
        a.out.json.as_deref(),
    )?;
    if let Some(p) = &a.out.csv {
        write_rows_csv(&records, p)?;
    }
    Ok(outcomes.iter().all(|o| o.pass))
}
