//! Weierstrass sigma and zeta on a skew lattice: quasi-periods, the Legendre
//! relation, and the quasi-periodicity of sigma under both periods.

use elliptic_cauchy::weierstrass::Lattice;
use elliptic_cauchy::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lat = Lattice::from_tau(Complex64::new(0.3, 0.7), 1e-16)?;
    println!("omega = {}, omega' = {}", lat.omega(), lat.omega_prime());
    println!("eta   = {:.15}", lat.eta());
    println!("eta'  = {:.15}", lat.eta_prime());
    println!("Legendre residual |2 eta omega' - 2 eta' omega - i pi| = {:.2e}", lat.legendre_residual());

    let square = Lattice::from_tau(Complex64::i(), 1e-16)?;
    println!("square lattice eta = {:.15} (pi/4 = {:.15})", square.eta().re, std::f64::consts::FRAC_PI_4);

    let x = Complex64::new(0.21, -0.13);
    println!("\nsigma({x}) = {:.15}", lat.sigma(x));
    println!("zeta({x})  = {:.15}", lat.zeta(x)?);

    // sigma(x + 2w) = -exp(2 eta_w (x + w)) sigma(x) for a half-period w
    for (name, w, eta_w) in [
        ("omega ", lat.omega(), lat.eta()),
        ("omega'", lat.omega_prime(), lat.eta_prime()),
    ] {
        let lhs = lat.sigma(x + 2.0 * w);
        let rhs = -(2.0 * eta_w * (x + w)).exp() * lat.sigma(x);
        println!("shift by 2 {name}: relative residual {:.2e}", (lhs - rhs).norm() / rhs.norm());
    }

    let far = x + lat.period(3, -2);
    let red = lat.reduce_to_cell(far);
    println!("\n{far} reduces to {} with (m, m') = ({}, {})", red.x_reduced, red.m, red.m_prime);
    println!("sigma far from the cell: {:.6e}", lat.sigma(far));
    Ok(())
}
