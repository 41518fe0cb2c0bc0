//! JSON and CSV report files.
//!
//! Field names in [`Document`] are a stable interface. Finite floats are
//! written with 17 significant digits; NaN and infinities become `null`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use ortholab_core::summability::{ReportFlag, ToleranceMode, VerificationReport};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue { re: z.re, im: z.im }
    }
}

/// Serialized form of a [`VerificationReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub name: String,
    pub computed: ComplexValue,
    pub expected: ComplexValue,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub mode: &'static str,
    pub pass: bool,
    pub runtime_ms: f64,
    pub flags: Vec<&'static str>,
}

pub fn mode_name(mode: ToleranceMode) -> &'static str {
    match mode {
        ToleranceMode::Relative => "relative",
        ToleranceMode::Absolute => "absolute",
    }
}

pub fn flag_name(flag: ReportFlag) -> &'static str {
    match flag {
        ReportFlag::Diverging => "diverging",
        ReportFlag::Inconclusive => "inconclusive",
        ReportFlag::Overflow => "overflow",
        ReportFlag::TruncationWarning => "truncation_warning",
        ReportFlag::CoefficientGate => "coefficient_gate",
        ReportFlag::Domain => "domain",
    }
}

impl From<&VerificationReport> for ReportRecord {
    fn from(r: &VerificationReport) -> Self {
        ReportRecord {
            name: r.name.clone(),
            computed: r.computed.into(),
            expected: r.expected.into(),
            abs_err: r.abs_err,
            rel_err: r.rel_err,
            tolerance: r.tolerance,
            mode: mode_name(r.mode),
            pass: r.pass,
            runtime_ms: r.runtime_ms,
            flags: r.flags.iter().map(|&f| flag_name(f)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub pass_count: usize,
    pub fail_count: usize,
    /// Largest finite relative error; `null` when there is none.
    pub max_rel_err: f64,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let pass_count = reports.iter().filter(|r| r.pass).count();
        let max_rel_err = reports
            .iter()
            .map(|r| r.rel_err)
            .filter(|e| e.is_finite())
            .fold(f64::NAN, f64::max);
        Summary {
            pass_count,
            fail_count: reports.len() - pass_count,
            max_rel_err,
        }
    }
}

/// The JSON document written by every command.
#[derive(Debug, Clone, Serialize)]
pub struct Document<C: Serialize, X: Serialize> {
    pub command: String,
    pub config: C,
    pub reports: Vec<ReportRecord>,
    pub summary: Summary,
    pub tool_version: &'static str,
    /// Command-specific tables such as verdicts per θ or criterion outcomes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<X>,
}

impl<C: Serialize, X: Serialize> Document<C, X> {
    pub fn new(
        command: &str,
        config: C,
        reports: &[VerificationReport],
        details: Option<X>,
    ) -> Self {
        Document {
            command: command.to_string(),
            config,
            reports: reports.iter().map(ReportRecord::from).collect(),
            summary: Summary::of(reports),
            tool_version: env!("CARGO_PKG_VERSION"),
            details,
        }
    }
}

/// Pretty printer that writes floats as `{:.16e}`.
struct FixedDigits<'a>(PrettyFormatter<'a>);

impl Formatter for FixedDigits<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_array(writer)
    }

    fn end_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object(writer)
    }

    fn end_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object_value(writer)
    }
}

/// Serializes `value` as pretty JSON with 17-digit floats.
pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut buf, FixedDigits(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// Writes JSON to `path`, or to stdout when `path` is `None`.
pub fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> io::Result<()> {
    let text = to_json(value).map_err(io::Error::other)?;
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            w.write_all(text.as_bytes())?;
            w.flush()
        }
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

#[derive(Serialize)]
struct ReportRow<'a> {
    name: &'a str,
    computed_re: f64,
    computed_im: f64,
    expected_re: f64,
    expected_im: f64,
    abs_err: f64,
    rel_err: f64,
    tolerance: f64,
    mode: &'static str,
    pass: bool,
    flags: String,
}

/// One CSV row per report, with a header.
pub fn write_report_csv(reports: &[VerificationReport], path: &Path) -> io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in reports {
        w.serialize(ReportRow {
            name: &r.name,
            computed_re: r.computed.re,
            computed_im: r.computed.im,
            expected_re: r.expected.re,
            expected_im: r.expected.im,
            abs_err: r.abs_err,
            rel_err: r.rel_err,
            tolerance: r.tolerance,
            mode: mode_name(r.mode),
            pass: r.pass,
            flags: r
                .flags
                .iter()
                .map(|&f| flag_name(f))
                .collect::<Vec<_>>()
                .join(";"),
        })?;
    }
    w.flush()
}

/// One CSV row per serialized record, with a header.
pub fn write_rows_csv<T: Serialize>(rows: &[T], path: &Path) -> io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()
}
