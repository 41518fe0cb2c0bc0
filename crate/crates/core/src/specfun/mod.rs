//! Scalar special functions behind the kernels and normalizations.
//!
//! Everything here is summed from series or continued fractions with an
//! explicit stopping rule ([`SeriesControl`]). Gamma-dependent constants are
//! formed in log space and exponentiated last.

mod bessel;
mod gamma;
mod hypergeometric;

pub use bessel::{
    bessel_k, bessel_k_integral, bessel_k_integral_scaled, bessel_k_scaled, besseli_entire, KValue,
};
pub use gamma::{ln_gamma_ratio, ln_pochhammer, log_gamma, pochhammer_ratio_limit_check};
pub use hypergeometric::{appell_f4, appell_f4_guard, gauss_2f1, HYPERGEOMETRIC_GUARD};

pub(crate) use gamma::lgamma;

use crate::{Error, Result};

/// Truncation policy for infinite series.
///
/// A series stops once `consecutive_small` successive terms satisfy
/// `|term| ≤ rel_tol · |partial sum|`, or fails after `max_terms` terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub rel_tol: f64,
    pub consecutive_small: usize,
}

impl SeriesControl {
    pub fn new(max_terms: usize, rel_tol: f64, consecutive_small: usize) -> Result<Self> {
        let ctrl = SeriesControl {
            max_terms,
            rel_tol,
            consecutive_small,
        };
        ctrl.validate()?;
        Ok(ctrl)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 8 {
            return Err(Error::InvalidParameter("max_terms must be at least 8"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::InvalidParameter("rel_tol must lie in (0, 1)"));
        }
        if self.consecutive_small < 2 {
            return Err(Error::InvalidParameter(
                "consecutive_small must be at least 2",
            ));
        }
        Ok(())
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            max_terms: 4000,
            rel_tol: 1e-17,
            consecutive_small: 3,
        }
    }
}

/// Tracks the run of small terms for [`SeriesControl`].
pub(crate) struct Stopper {
    ctrl: SeriesControl,
    small: usize,
    seen: usize,
}

impl Stopper {
    pub(crate) fn new(ctrl: SeriesControl) -> Result<Self> {
        ctrl.validate()?;
        Ok(Stopper {
            ctrl,
            small: 0,
            seen: 0,
        })
    }

    /// Records one term (or block) and reports whether the series is done.
    pub(crate) fn done(&mut self, term_mag: f64, sum_mag: f64) -> Result<bool> {
        self.seen += 1;
        if !term_mag.is_finite() || !sum_mag.is_finite() {
            return Err(Error::Overflow);
        }
        if term_mag <= self.ctrl.rel_tol * sum_mag {
            self.small += 1;
        } else {
            self.small = 0;
        }
        if self.small >= self.ctrl.consecutive_small {
            return Ok(true);
        }
        if self.seen >= self.ctrl.max_terms {
            return Err(Error::Truncation { terms: self.seen });
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn control_validation() {
        assert!(SeriesControl::new(8, 1e-16, 2).is_ok());
        assert!(SeriesControl::new(7, 1e-16, 2).is_err());
        assert!(SeriesControl::new(100, 0.0, 2).is_err());
        assert!(SeriesControl::new(100, 1.0, 2).is_err());
        assert!(SeriesControl::new(100, 1e-10, 1).is_err());
        assert!(SeriesControl::default().validate().is_ok());
    }

    #[test]
    fn stopper_needs_a_run_of_small_terms() {
        let mut s = Stopper::new(SeriesControl::new(10, 1e-3, 3).unwrap()).unwrap();
        assert!(!s.done(0.0, 1.0).unwrap());
        assert!(!s.done(0.0, 1.0).unwrap());
        assert!(!s.done(0.5, 1.0).unwrap());
        assert!(!s.done(0.0, 1.0).unwrap());
        assert!(!s.done(0.0, 1.0).unwrap());
        assert!(s.done(0.0, 1.0).unwrap());
    }

    #[test]
    fn stopper_reports_truncation() {
        let mut s = Stopper::new(SeriesControl::new(8, 1e-3, 2).unwrap()).unwrap();
        for _ in 0..7 {
            assert!(!s.done(1.0, 1.0).unwrap());
        }
        assert_eq!(s.done(1.0, 1.0), Err(Error::Truncation { terms: 8 }));
    }
}
