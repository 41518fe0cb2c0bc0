//! Fixed-order pairwise summation.
//!
//! Every quadrature reduction in the crate goes through these helpers so that
//! a given input always produces the same bits, independent of how the
//! summands were produced.

use num_complex::Complex64;

const LEAF: usize = 8;

pub fn pairwise(values: &[f64]) -> f64 {
    if values.len() <= LEAF {
        return values.iter().fold(0.0, |acc, v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise(&values[..mid]) + pairwise(&values[mid..])
}

pub fn pairwise_complex(values: &[Complex64]) -> Complex64 {
    if values.len() <= LEAF {
        return values
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise_complex(&values[..mid]) + pairwise_complex(&values[mid..])
}
