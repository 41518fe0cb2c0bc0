use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failures shared by every module of the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of the function.
    Domain(&'static str),
    /// A family or kernel parameter is out of range.
    InvalidParameter(&'static str),
    /// A series did not meet its tolerance within the allowed number of terms.
    Truncation { terms: usize },
    /// A hypergeometric argument exceeded the convergence guard.
    Guard { value: f64, limit: f64 },
    /// A point lies outside the domain of a kernel.
    OutsideDomain,
    /// An intermediate value left the representable range.
    Overflow,
    /// An eigenvalue iteration failed to converge.
    NoConvergence,
    /// Too little data for an estimate.
    InsufficientData { needed: usize, got: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::Truncation { terms } => {
                write!(f, "series tolerance not met within {terms} terms")
            }
            Error::Guard { value, limit } => {
                write!(
                    f,
                    "hypergeometric argument {value:.6} exceeds guard {limit}"
                )
            }
            Error::OutsideDomain => write!(f, "point outside the kernel domain"),
            Error::Overflow => write!(f, "value exceeds the representable range"),
            Error::NoConvergence => write!(f, "eigenvalue iteration did not converge"),
            Error::InsufficientData { needed, got } => {
                write!(f, "need at least {needed} values, got {got}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
