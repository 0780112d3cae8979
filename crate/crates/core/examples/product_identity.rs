//! The product rule `G(x, y) G(y, z) = G(x, z)` with the parameter shifted by the
//! point sums, for the sigma, sin and rational kernels and the large-lambda `K`.

use elliptic_cauchy::cauchy::{g_matrix, k_matrix, Kernel, PointSet};
use elliptic_cauchy::linalg::{mat_mul, rel_residual};
use elliptic_cauchy::weierstrass::Lattice;
use elliptic_cauchy::Complex64;

fn points(v: &[(f64, f64)]) -> PointSet {
    PointSet::new(v.iter().map(|&(a, b)| Complex64::new(a, b)).collect()).unwrap()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = points(&[(0.1, 0.2), (-0.4, 0.1), (0.35, -0.3)]);
    let y = points(&[(0.5, 0.4), (-0.2, 0.45), (0.7, -0.1)]);
    let z = points(&[(-0.55, -0.2), (0.25, 0.05), (-0.05, -0.4)]);
    let lambda = Complex64::new(0.37, 0.11);

    let lat = Lattice::from_tau(Complex64::new(0.3, 0.7), 1e-16)?;
    for kernel in [Kernel::Elliptic(lat), Kernel::Trigonometric, Kernel::Rational] {
        let lhs = mat_mul(
            &g_matrix(&kernel, &x, &y, lambda + y.sum())?,
            &g_matrix(&kernel, &y, &z, lambda + z.sum())?,
        )?;
        let rhs = g_matrix(&kernel, &x, &z, lambda + z.sum())?;
        println!("{:<10} relative residual {:.2e}", kernel.tag(), rel_residual(&lhs, &rhs)?);
    }

    let lhs = mat_mul(&k_matrix(&x, &y)?, &k_matrix(&y, &z)?)?;
    println!("{:<10} relative residual {:.2e}", "K", rel_residual(&lhs, &k_matrix(&x, &z)?)?);
    Ok(())
}
