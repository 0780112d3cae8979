//! Cauchy-type matrices and their closed forms.

use num_complex::Complex64;

use super::{Instance, Kernel, PointSet};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn same_size(a: &PointSet, b: &PointSet) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.len())
}

/// `C_ij = f(x_i - y_j + lambda) / (f(lambda) f(x_i - y_j))` for the kernel `f`.
pub fn kernel_cauchy(
    kernel: &Kernel,
    x: &PointSet,
    y: &PointSet,
    lambda: Complex64,
) -> Result<CMatrix> {
    let n = same_size(x, y)?;
    let f_lambda = kernel.nonzero(lambda, "lambda")?;
    CMatrix::try_from_fn(n, |i, j| {
        let u = x[i] - y[j];
        let den = kernel.nonzero(u, "x_i - y_j")?;
        Ok(kernel.eval(u + lambda) / (f_lambda * den))
    })
}

/// Cauchy matrix of an instance.
pub fn cauchy_matrix(inst: &Instance) -> Result<CMatrix> {
    kernel_cauchy(inst.kernel(), inst.x(), inst.y(), inst.lambda())
}

/// The classic `1 / (x_i - y_j)`.
pub fn classic_cauchy(x: &PointSet, y: &PointSet) -> Result<CMatrix> {
    let n = same_size(x, y)?;
    CMatrix::try_from_fn(n, |i, j| {
        Ok(ONE / Kernel::Rational.nonzero(x[i] - y[j], "x_i - y_j")?)
    })
}

/// `prod_{a<b} (x_a - x_b)(y_b - y_a) / prod_{a,b} (x_a - y_b)`
pub fn classic_cauchy_det(x: &PointSet, y: &PointSet) -> Result<Complex64> {
    frobenius_core(&Kernel::Rational, x, y, ONE)
}

/// Shared body of the Cauchy and Frobenius determinant formulas; `prefactor`
/// multiplies the product part.
fn frobenius_core(
    kernel: &Kernel,
    x: &PointSet,
    y: &PointSet,
    prefactor: Complex64,
) -> Result<Complex64> {
    let n = same_size(x, y)?;
    let mut num = prefactor;
    for a in 0..n {
        for b in a + 1..n {
            num *= kernel.eval(x[a] - x[b]) * kernel.eval(y[b] - y[a]);
        }
    }
    let mut den = ONE;
    for a in 0..n {
        for b in 0..n {
            den *= kernel.nonzero(x[a] - y[b], "x_a - y_b")?;
        }
    }
    Ok(num / den)
}

/// Frobenius determinant
/// `f(lambda + X - Y)/f(lambda) * prod_{a<b} f(x_a - x_b) f(y_b - y_a) / prod_{a,b} f(x_a - y_b)`.
pub fn frobenius_det_with(
    kernel: &Kernel,
    x: &PointSet,
    y: &PointSet,
    lambda: Complex64,
) -> Result<Complex64> {
    let f_lambda = kernel.nonzero(lambda, "lambda")?;
    let shifted = kernel.nonzero(lambda + x.sum() - y.sum(), "lambda + X - Y")?;
    frobenius_core(kernel, x, y, shifted / f_lambda)
}

pub fn frobenius_det(inst: &Instance) -> Result<Complex64> {
    frobenius_det_with(inst.kernel(), inst.x(), inst.y(), inst.lambda())
}

/// Entry `(i, j)` of the closed-form inverse without the `lambda` prefactor:
/// `f(x_i - y_i) f(x_j - y_j) / f(x_j - y_i) * prod_{k!=i} f(y_i - x_k)/f(y_i - y_k)
///  * prod_{l!=j} f(x_j - y_l)/f(x_j - x_l)`.
fn inverse_core(kernel: &Kernel, x: &PointSet, y: &PointSet, i: usize, j: usize) -> Result<Complex64> {
    let n = x.len();
    let mut v = kernel.eval(x[i] - y[i]) * kernel.eval(x[j] - y[j])
        / kernel.nonzero(x[j] - y[i], "x_j - y_i")?;
    for k in (0..n).filter(|&k| k != i) {
        v *= kernel.eval(y[i] - x[k]) / kernel.nonzero(y[i] - y[k], "y_i - y_k")?;
    }
    for l in (0..n).filter(|&l| l != j) {
        v *= kernel.eval(x[j] - y[l]) / kernel.nonzero(x[j] - x[l], "x_j - x_l")?;
    }
    Ok(v)
}

/// Closed-form inverse of the kernel Cauchy matrix:
/// `f(y_i - x_j + lambda + X - Y) / f(lambda + X - Y)` times the product part.
pub fn inverse_closed_with(
    kernel: &Kernel,
    x: &PointSet,
    y: &PointSet,
    lambda: Complex64,
) -> Result<CMatrix> {
    let n = same_size(x, y)?;
    let shift = lambda + x.sum() - y.sum();
    let f_shift = kernel.nonzero(shift, "lambda + X - Y")?;
    CMatrix::try_from_fn(n, |i, j| {
        let pre = kernel.eval(y[i] - x[j] + shift) / f_shift;
        Ok(pre * inverse_core(kernel, x, y, i, j)?)
    })
}

pub fn cauchy_inverse_closed(inst: &Instance) -> Result<CMatrix> {
    inverse_closed_with(inst.kernel(), inst.x(), inst.y(), inst.lambda())
}

/// Closed-form inverse of the classic Cauchy matrix `1 / (x_i - y_j)`.
pub fn classic_cauchy_inverse(x: &PointSet, y: &PointSet) -> Result<CMatrix> {
    let n = same_size(x, y)?;
    CMatrix::try_from_fn(n, |i, j| inverse_core(&Kernel::Rational, x, y, i, j))
}

/// Diagonal of `D(x, y)`: `f(x_i - y_i) prod_{k!=i} f(x_i - y_k) / f(x_i - x_k)`.
pub fn d_diagonal(kernel: &Kernel, x: &PointSet, y: &PointSet) -> Result<Vec<Complex64>> {
    let n = same_size(x, y)?;
    (0..n)
        .map(|i| {
            let mut v = kernel.eval(x[i] - y[i]);
            for k in (0..n).filter(|&k| k != i) {
                v *= kernel.eval(x[i] - y[k]) / kernel.nonzero(x[i] - x[k], "x_i - x_k")?;
            }
            Ok(v)
        })
        .collect()
}

pub fn d_matrix(kernel: &Kernel, x: &PointSet, y: &PointSet) -> Result<CMatrix> {
    Ok(CMatrix::diagonal(&d_diagonal(kernel, x, y)?))
}

/// `G_lambda(x, y) = D(x, y) C(x, y; lambda)`, built row by row.
pub fn g_matrix(kernel: &Kernel, x: &PointSet, y: &PointSet, lambda: Complex64) -> Result<CMatrix> {
    let d = d_diagonal(kernel, x, y)?;
    let mut c = kernel_cauchy(kernel, x, y, lambda)?;
    let n = c.n();
    for (i, di) in d.iter().enumerate() {
        for j in 0..n {
            c[(i, j)] *= di;
        }
    }
    Ok(c)
}

/// `H_lambda(x, y) = C(x, y; lambda) D(y, x)`.
pub fn h_matrix(kernel: &Kernel, x: &PointSet, y: &PointSet, lambda: Complex64) -> Result<CMatrix> {
    let d = d_diagonal(kernel, y, x)?;
    let mut c = kernel_cauchy(kernel, x, y, lambda)?;
    let n = c.n();
    for i in 0..n {
        for (j, dj) in d.iter().enumerate() {
            c[(i, j)] *= dj;
        }
    }
    Ok(c)
}

/// `K_ij = prod_{k!=j} (x_i - y_k) / prod_{l!=i} (x_i - x_l)`, the large-`lambda`
/// limit of the rational `G`.
pub fn k_matrix(x: &PointSet, y: &PointSet) -> Result<CMatrix> {
    let n = same_size(x, y)?;
    CMatrix::try_from_fn(n, |i, j| {
        let mut v = ONE;
        for k in (0..n).filter(|&k| k != j) {
            v *= x[i] - y[k];
        }
        for l in (0..n).filter(|&l| l != i) {
            v /= Kernel::Rational.nonzero(x[i] - x[l], "x_i - x_l")?;
        }
        Ok(v)
    })
}
