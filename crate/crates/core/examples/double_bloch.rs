//! Double-Bloch functions with poles at a point set: multipliers under both
//! periods, and moving the poles from `x` to `y` by a `G` matrix.

use elliptic_cauchy::cauchy::{bloch_eval, bloch_transport, PointSet};
use elliptic_cauchy::weierstrass::Lattice;
use elliptic_cauchy::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lat = Lattice::from_tau(c(0.3, 0.7), 1e-16)?;
    let x = PointSet::new(vec![c(0.1, 0.2), c(-0.4, 0.1), c(0.35, -0.3)])?;
    let y = PointSet::new(vec![c(0.5, 0.4), c(-0.2, 0.45), c(0.7, -0.1)])?;
    let coeffs = [c(1.0, 0.0), c(-0.5, 0.3), c(0.2, 0.7)];
    let lambda = c(0.37, 0.11);
    let w = c(-0.15, 0.33);

    let psi = bloch_eval(&lat, &x, &coeffs, lambda, w)?;
    for (name, period, eta) in [
        ("2 omega ", lat.period(1, 0), lat.eta()),
        ("2 omega'", lat.period(0, 1), lat.eta_prime()),
    ] {
        let shifted = bloch_eval(&lat, &x, &coeffs, lambda, w + period)?;
        let mult = (2.0 * eta * lambda).exp();
        println!("shift {name}: |psi(w+T) - e^(2 eta lambda) psi(w)| / |psi| = {:.2e}", (shifted - mult * psi).norm() / psi.norm());
    }

    // multiplying by prod sigma(w - x_i)/sigma(w - y_i) moves poles to y and lambda to lambda - X + Y
    let b = bloch_transport(&lat, &x, &y, lambda, &coeffs)?;
    let moved = lambda - x.sum() + y.sum();
    for w in [c(-0.15, 0.33), c(0.42, -0.05), c(-0.7, -0.2)] {
        let factor: Complex64 = x.iter().zip(y.iter()).map(|(&xi, &yi)| lat.sigma(w - xi) / lat.sigma(w - yi)).product();
        let lhs = bloch_eval(&lat, &x, &coeffs, lambda, w)? * factor;
        let rhs = bloch_eval(&lat, &y, &b, moved, w)?;
        println!("transported at w = {w}: relative gap {:.2e}", (lhs - rhs).norm() / rhs.norm());
    }
    Ok(())
}
