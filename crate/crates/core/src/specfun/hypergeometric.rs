use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{SeriesControl, Stopper};
use crate::{Error, Result};

/// Largest argument measure accepted by the hypergeometric series.
///
/// Applies to `|t|` for `2F1` and to `√|t| + √|s|` for `F4`.
pub const HYPERGEOMETRIC_GUARD: f64 = 0.97;

fn is_nonpositive_integer(c: f64) -> bool {
    c <= 0.0 && c == c.round()
}

/// Gauss hypergeometric series `Σ (a)_k (b)_k / ((c)_k k!) t^k` for |t| ≤ 0.97.
pub fn gauss_2f1(a: f64, b: f64, c: f64, t: Complex64, ctrl: SeriesControl) -> Result<Complex64> {
    if is_nonpositive_integer(c) {
        return Err(Error::Domain("2F1 requires c not a non-positive integer"));
    }
    let r = t.norm();
    if !(r <= HYPERGEOMETRIC_GUARD) {
        return Err(Error::Guard {
            value: r,
            limit: HYPERGEOMETRIC_GUARD,
        });
    }
    let mut stop = Stopper::new(ctrl)?;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut k = 0.0;
    loop {
        term = term * t * ((a + k) * (b + k) / ((c + k) * (k + 1.0)));
        sum += term;
        if stop.done(term.norm(), sum.norm())? {
            return Ok(sum);
        }
        k += 1.0;
    }
}

/// `√|t| + √|s|`, the quantity bounded by [`HYPERGEOMETRIC_GUARD`] for `F4`.
pub fn appell_f4_guard(t: Complex64, s: Complex64) -> f64 {
    t.norm().sqrt() + s.norm().sqrt()
}

/// Appell's double series
/// `F4(a, b; c1, c2; t, s) = Σ_{m,n} (a)_{m+n} (b)_{m+n} / ((c1)_m (c2)_n m! n!) t^m s^n`.
///
/// Terms are grouped in diagonal blocks `m + n = N`; each block is built from
/// the previous one by a single ratio per term, and the stopping rule is
/// applied to the block's absolute sum.
pub fn appell_f4(
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
    t: Complex64,
    s: Complex64,
    ctrl: SeriesControl,
) -> Result<Complex64> {
    if is_nonpositive_integer(c1) || is_nonpositive_integer(c2) {
        return Err(Error::Domain(
            "F4 requires c1, c2 not non-positive integers",
        ));
    }
    let g = appell_f4_guard(t, s);
    if !(g <= HYPERGEOMETRIC_GUARD) {
        return Err(Error::Guard {
            value: g,
            limit: HYPERGEOMETRIC_GUARD,
        });
    }
    let mut stop = Stopper::new(ctrl)?;
    // block[m] holds the term with t^m s^{N-m}
    let mut block: Vec<Complex64> = alloc::vec![Complex64::new(1.0, 0.0)];
    let mut sum = Complex64::new(1.0, 0.0);
    let mut n_total = 0.0;
    loop {
        let ab = (a + n_total) * (b + n_total);
        let mut next = Vec::with_capacity(block.len() + 1);
        let mut block_sum = Complex64::new(0.0, 0.0);
        let mut block_abs = 0.0;
        for (m, term) in block.iter().enumerate() {
            let n = n_total - m as f64;
            let v = term * s * (ab / ((c2 + n) * (n + 1.0)));
            block_sum += v;
            block_abs += v.norm();
            next.push(v);
        }
        let last = block[block.len() - 1] * t * (ab / ((c1 + n_total) * (n_total + 1.0)));
        block_sum += last;
        block_abs += last.norm();
        next.push(last);

        sum += block_sum;
        block = next;
        n_total += 1.0;
        if stop.done(block_abs, sum.norm())? {
            return Ok(sum);
        }
    }
}
