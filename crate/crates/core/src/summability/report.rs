use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

/// Conditions attached to a verification report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFlag {
    /// The coefficient sum diverges at this θ.
    Diverging,
    /// The coefficient sum could not be judged from the available terms.
    Inconclusive,
    /// A value left the floating-point range.
    Overflow,
    /// A planar or series truncation exceeded its warning level.
    TruncationWarning,
    /// Quadrature coefficients disagree with their closed form.
    CoefficientGate,
    /// A parameter or point fell outside the domain of a formula.
    Domain,
}

impl ReportFlag {
    /// Flags that invalidate the comparison.
    pub fn is_blocking(self) -> bool {
        matches!(
            self,
            ReportFlag::Diverging
                | ReportFlag::Overflow
                | ReportFlag::CoefficientGate
                | ReportFlag::Domain
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToleranceMode {
    /// Pass when `|computed - expected| ≤ tol · |expected|`.
    Relative,
    /// Pass when `|computed - expected| ≤ tol`.
    Absolute,
}

/// One computed-versus-expected comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub name: String,
    pub computed: Complex64,
    pub expected: Complex64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub mode: ToleranceMode,
    pub pass: bool,
    /// Wall time; the core crate has no clock and leaves it at 0.
    pub runtime_ms: f64,
    pub flags: Vec<ReportFlag>,
}

impl VerificationReport {
    /// Builds the report. A blocking flag sets both errors to infinity, so
    /// `pass` always equals the tolerance test on the reported error.
    pub fn compare(
        name: impl Into<String>,
        computed: Complex64,
        expected: Complex64,
        tolerance: f64,
        mode: ToleranceMode,
        flags: Vec<ReportFlag>,
    ) -> Self {
        let blocked = flags.iter().any(|f| f.is_blocking());
        let finite = computed.re.is_finite() && computed.im.is_finite();
        let (abs_err, rel_err) = if blocked || !finite {
            (f64::INFINITY, f64::INFINITY)
        } else {
            let a = (computed - expected).norm();
            let e = expected.norm();
            (
                a,
                if e > 0.0 {
                    a / e
                } else if a == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                },
            )
        };
        let err = match mode {
            ToleranceMode::Relative => rel_err,
            ToleranceMode::Absolute => abs_err,
        };
        VerificationReport {
            name: name.into(),
            computed,
            expected,
            abs_err,
            rel_err,
            tolerance,
            mode,
            pass: err <= tolerance,
            runtime_ms: 0.0,
            flags,
        }
    }

    pub fn with_runtime(mut self, runtime_ms: f64) -> Self {
        self.runtime_ms = runtime_ms;
        self
    }

    /// The error measured against the tolerance.
    pub fn error(&self) -> f64 {
        match self.mode {
            ToleranceMode::Relative => self.rel_err,
            ToleranceMode::Absolute => self.abs_err,
        }
    }
}
