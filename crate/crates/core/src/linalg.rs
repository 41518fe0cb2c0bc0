//! Small dense eigenvalue routines.
//!
//! Two solvers cover everything the crate needs: implicit QL on a symmetric
//! tridiagonal matrix (Golub–Welsch quadrature) and cyclic Jacobi rotations on
//! a dense symmetric matrix (Gram matrices of at most 32 points, embedded as
//! real matrices of order 64).

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

const QL_MAX_ITER: usize = 60;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
///
/// `diag` holds the diagonal and `offdiag[i]` couples rows `i` and `i + 1`
/// (the last entry is ignored). On return `diag` holds the eigenvalues in
/// ascending order and `z` has been overwritten by `Qᵀ z`, where the columns of
/// `Q` are the eigenvectors. Passing `z = (√μ₀, 0, …, 0)` yields Gauss weights
/// as `z[i]²`.
pub fn tridiagonal_ql(diag: &mut [f64], offdiag: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = diag.len();
    if offdiag.len() != n || z.len() != n {
        return Err(Error::InvalidParameter(
            "tridiagonal arrays must have equal length",
        ));
    }
    if n <= 1 {
        return Ok(());
    }
    offdiag[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                if offdiag[m].abs() <= f64::EPSILON * (diag[m].abs() + diag[m + 1].abs()) {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter >= QL_MAX_ITER {
                return Err(Error::NoConvergence);
            }
            iter += 1;

            let mut p = diag[l];
            let mut g = (diag[l + 1] - p) / (2.0 * offdiag[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - p + offdiag[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            p = 0.0;

            for i in (l..m).rev() {
                let mut f = s * offdiag[i];
                let b = c * offdiag[i];
                if g.abs() <= f.abs() {
                    c = g / f;
                    r = c.hypot(1.0);
                    offdiag[i + 1] = f * r;
                    s = 1.0 / r;
                    c *= s;
                } else {
                    s = f / g;
                    r = s.hypot(1.0);
                    offdiag[i + 1] = g * r;
                    c = 1.0 / r;
                    s *= c;
                }
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            diag[l] -= p;
            offdiag[l] = g;
            offdiag[m] = 0.0;
        }
    }

    // selection sort keeps `z` paired with its eigenvalue
    for i in 0..n - 1 {
        let mut k = i;
        for j in i + 1..n {
            if diag[j] < diag[k] {
                k = j;
            }
        }
        if k != i {
            diag.swap(i, k);
            z.swap(i, k);
        }
    }
    Ok(())
}

/// Eigenvalues of a dense symmetric matrix stored row-major, ascending.
pub fn symmetric_eigenvalues(matrix: &[f64], n: usize) -> Result<Vec<f64>> {
    if matrix.len() != n * n {
        return Err(Error::InvalidParameter("matrix must be n × n"));
    }
    let mut a = matrix.to_vec();
    let frob = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    if frob == 0.0 {
        return Ok(vec![0.0; n]);
    }

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * frob {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence);
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap_or(core::cmp::Ordering::Equal));
    Ok(eig)
}

/// Smallest eigenvalue of a Hermitian matrix stored row-major.
///
/// Uses the real embedding `[[A, -B], [B, A]]` of `A + iB`, whose spectrum is
/// the Hermitian spectrum with every eigenvalue doubled in multiplicity.
pub fn hermitian_min_eigenvalue(matrix: &[Complex64], n: usize) -> Result<f64> {
    if matrix.len() != n * n {
        return Err(Error::InvalidParameter("matrix must be n × n"));
    }
    if n == 0 {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let m = 2 * n;
    let mut real = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            // symmetrize away roundoff in the imaginary diagonal
            let h = (matrix[i * n + j] + matrix[j * n + i].conj()) * 0.5;
            real[i * m + j] = h.re;
            real[(i + n) * m + (j + n)] = h.re;
            real[i * m + (j + n)] = -h.im;
            real[(i + n) * m + j] = h.im;
        }
    }
    Ok(symmetric_eigenvalues(&real, m)?[0])
}
