//! Numerical core for geometric-weight summability of classical orthogonal
//! expansions.
//!
//! Given the Fourier coefficients `f_k` of a function in orthonormal Hermite,
//! Laguerre or Jacobi polynomials, the sum `Σ |f_k|² θ^k` (θ > 1) is finite
//! exactly when `f` extends to a function in a reproducing kernel Hilbert
//! space whose kernel has a closed form. This crate provides the pieces to
//! check that correspondence numerically:
//!
//! * [`specfun`]: log-gamma, the entire Bessel combination `E_ν`, `K_ν`,
//!   Gauss `2F1` and Appell `F4` series.
//! * [`orthopoly`]: orthonormal polynomial families evaluated at complex
//!   arguments by three-term recurrence.
//! * [`kernels`]: Mehler, Hardy–Hille, Bailey, Gegenbauer and auxiliary
//!   kernels in closed form, their bilinear series, and structural checks.
//! * [`quadrature`]: Gauss rules (Golub–Welsch), weighted area integrals over
//!   the complex plane and trapezoid integrals over ellipse boundaries.
//! * [`summability`]: weighted coefficient sums, convergence-radius
//!   estimation and the norm-identity and membership reports.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

mod error;
pub mod kernels;
pub mod linalg;
pub mod orthopoly;
pub mod quadrature;
pub mod specfun;
pub mod sum;
pub mod summability;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use kernels::{EllipseDomain, KernelKind, KernelSpec};
pub use orthopoly::FamilySpec;
pub use quadrature::{EllipseContour, PlanarGridSpec, PlanarScheme, QuadratureRule};
pub use specfun::SeriesControl;
pub use summability::{CoefficientSeries, SummabilityReport, Verdict, VerificationReport};
