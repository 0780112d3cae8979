//! The factor matrices `g_lambda(x)` with `G_{lambda+Y}(x, y) = g_lambda(x) g_lambda(y)^{-1}`,
//! one per kernel, plus the row-scaled Vandermonde `W` for the `lambda -> infinity` limit.

use num_complex::Complex64;

use super::{Kernel, PointSet};
use crate::error::Result;
use crate::linalg::CMatrix;
use crate::weierstrass::Lattice;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `prod_{l != i} f(x_i - x_l)`
fn row_denominator(kernel: &Kernel, x: &PointSet, i: usize) -> Result<Complex64> {
    (0..x.len())
        .filter(|&l| l != i)
        .try_fold(ONE, |acc, l| Ok(acc * kernel.nonzero(x[i] - x[l], "x_i - x_l")?))
}

fn sign_pow(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Elliptic factor: `g_ij = sigma^(j)(x_i + lambda/N) / prod_{l!=i} sigma(x_i - x_l)`,
/// columns `j = 1..N`.
pub fn g_factor_elliptic(lat: &Lattice, x: &PointSet, lambda: Complex64) -> Result<CMatrix> {
    let n = x.len();
    let kernel = Kernel::Elliptic(lat.clone());
    let shift = lambda / n as f64;
    let dens = (0..n)
        .map(|i| row_denominator(&kernel, x, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(CMatrix::from_fn(n, |i, j| {
        lat.sigma_k(n, j + 1, x[i] + shift) / dens[i]
    }))
}

/// `phi_k(x) = exp(-i N x) (exp(2 i k (x + lambda/N)) + (-1)^N delta_{kN})`
pub fn trig_phi(k: usize, n: usize, x: Complex64, lambda: Complex64) -> Complex64 {
    let i = Complex64::i();
    let nf = n as f64;
    let mut inner = (2.0 * i * k as f64 * (x + lambda / nf)).exp();
    if k == n {
        inner += sign_pow(n);
    }
    (-i * nf * x).exp() * inner
}

/// `phi_k` in the variable `z = exp(2 i x)`: `z^k exp(2 i k lambda / N) + (-1)^N delta_{kN}`,
/// so that `phi_k(x) = exp(-i N x) trig_phi_tilde(k, N, exp(2 i x), lambda)`.
pub fn trig_phi_tilde(k: usize, n: usize, z: Complex64, lambda: Complex64) -> Complex64 {
    let i = Complex64::i();
    let mut v = z.powu(k as u32) * (2.0 * i * k as f64 * lambda / n as f64).exp();
    if k == n {
        v += sign_pow(n);
    }
    v
}

/// Trigonometric factor: `g_jk = phi_k(x_j) / prod_{l!=j} sin(x_j - x_l)`.
pub fn g_factor_trig(x: &PointSet, lambda: Complex64) -> Result<CMatrix> {
    let n = x.len();
    let dens = (0..n)
        .map(|j| row_denominator(&Kernel::Trigonometric, x, j))
        .collect::<Result<Vec<_>>>()?;
    Ok(CMatrix::from_fn(n, |j, k| {
        trig_phi(k + 1, n, x[j], lambda) / dens[j]
    }))
}

/// Rational factor: `g_jk = (x_j + lambda/N)^{k - 1 + delta_{kN}} / prod_{l!=j} (x_j - x_l)`.
/// Column exponents run `0, 1, ..., N-2, N`.
pub fn g_factor_rat(x: &PointSet, lambda: Complex64) -> Result<CMatrix> {
    let n = x.len();
    let dens = (0..n)
        .map(|j| row_denominator(&Kernel::Rational, x, j))
        .collect::<Result<Vec<_>>>()?;
    let shift = lambda / n as f64;
    Ok(CMatrix::from_fn(n, |j, k| {
        let exponent = if k + 1 == n { n } else { k };
        (x[j] + shift).powu(exponent as u32) / dens[j]
    }))
}

/// `W_ij = x_i^{j-1} / prod_{l!=i} (x_i - x_l)`
pub fn w_matrix(x: &PointSet) -> Result<CMatrix> {
    let n = x.len();
    let dens = (0..n)
        .map(|i| row_denominator(&Kernel::Rational, x, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(CMatrix::from_fn(n, |i, j| x[i].powu(j as u32) / dens[i]))
}

/// `sum_j w_j^k / prod_{l!=j} (w_j - w_l)` for any integer `k` (negative powers allowed).
pub fn lagrange_power_sum(w: &[Complex64], k: i32) -> Complex64 {
    (0..w.len())
        .map(|j| {
            let den = (0..w.len())
                .filter(|&l| l != j)
                .fold(ONE, |acc, l| acc * (w[j] - w[l]));
            w[j].powi(k) / den
        })
        .sum()
}
