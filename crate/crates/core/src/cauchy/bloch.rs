//! Double-Bloch functions with simple poles at a point set.
//!
//! `psi(w) = sum_i c_i sigma(w - x_i + lambda) / (sigma(lambda) sigma(w - x_i))` picks up
//! `exp(2 eta lambda)` and `exp(2 eta' lambda)` under the two period shifts. Multiplying
//! by `prod_i sigma(w - x_i) / sigma(w - y_i)` moves the poles to `y` and the parameter to
//! `lambda - X + Y`; the new coefficients are `G_lambda(y, x) c`.
//!
//! The zero parametrization `psi = const * prod sigma(w - u_i)/sigma(w - x_i)` with
//! `sum u_i = X - lambda` is not computed here.

use num_complex::Complex64;

use super::{g_matrix, Kernel, PointSet};
use crate::error::{Error, Result};
use crate::weierstrass::Lattice;

/// Evaluation points closer than this to a pole (modulo the lattice) are rejected.
pub const POLE_PROXIMITY_TOL: f64 = 1e-10;

pub fn bloch_eval(
    lat: &Lattice,
    poles: &PointSet,
    coeffs: &[Complex64],
    lambda: Complex64,
    point: Complex64,
) -> Result<Complex64> {
    if coeffs.len() != poles.len() {
        return Err(Error::DimensionMismatch {
            left: poles.len(),
            right: coeffs.len(),
        });
    }
    let kernel = Kernel::Elliptic(lat.clone());
    let f_lambda = kernel.nonzero(lambda, "lambda")?;
    poles
        .iter()
        .zip(coeffs)
        .map(|(&p, &c)| {
            let u = point - p;
            if lat.lattice_distance(u) < POLE_PROXIMITY_TOL {
                return Err(Error::PoleProximity(format!("{point}")));
            }
            Ok(c * lat.sigma(u + lambda) / (f_lambda * lat.sigma(u)))
        })
        .sum()
}

/// Coefficients `b = G_lambda(y, x) c` of the pole-moved function.
pub fn bloch_transport(
    lat: &Lattice,
    x: &PointSet,
    y: &PointSet,
    lambda: Complex64,
    coeffs: &[Complex64],
) -> Result<Vec<Complex64>> {
    let g = g_matrix(&Kernel::Elliptic(lat.clone()), y, x, lambda)?;
    g.mul_vec(coeffs)
}
