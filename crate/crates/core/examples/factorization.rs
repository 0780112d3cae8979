//! `G(x, y) = g(x) g(y)^{-1}` for each kernel, and the right gauge freedom
//! `g -> g S`.

use elliptic_cauchy::cauchy::{
    g_factor_elliptic, g_factor_rat, g_factor_trig, g_matrix, k_matrix, w_matrix, Kernel, PointSet,
};
use elliptic_cauchy::linalg::{lu_inverse, mat_mul, rel_residual, CMatrix};
use elliptic_cauchy::weierstrass::Lattice;
use elliptic_cauchy::Complex64;

fn points(v: &[(f64, f64)]) -> PointSet {
    PointSet::new(v.iter().map(|&(a, b)| Complex64::new(a, b)).collect()).unwrap()
}

fn factor_gap(target: &CMatrix, gx: &CMatrix, gy: &CMatrix) -> f64 {
    let prod = mat_mul(gx, &lu_inverse(gy).unwrap()).unwrap();
    rel_residual(&prod, target).unwrap()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = points(&[(0.1, 0.2), (-0.4, 0.1), (0.35, -0.3), (0.6, 0.3)]);
    let y = points(&[(0.5, 0.4), (-0.2, 0.45), (0.7, -0.1), (-0.6, -0.35)]);
    let lambda = Complex64::new(0.37, 0.11);
    let lat = Lattice::from_tau(Complex64::new(0.3, 0.7), 1e-16)?;

    let cases = [
        ("elliptic", Kernel::Elliptic(lat.clone()), g_factor_elliptic(&lat, &x, lambda)?, g_factor_elliptic(&lat, &y, lambda)?),
        ("trig", Kernel::Trigonometric, g_factor_trig(&x, lambda)?, g_factor_trig(&y, lambda)?),
        ("rational", Kernel::Rational, g_factor_rat(&x, lambda)?, g_factor_rat(&y, lambda)?),
    ];
    // the target carries the parameter shifted by the sum of y
    for (name, kernel, gx, gy) in &cases {
        let target = g_matrix(kernel, &x, &y, lambda + y.sum())?;
        println!("{name:<9} |G - g(x) g(y)^-1| / |G| = {:.2e}", factor_gap(&target, gx, gy));
    }

    let k = k_matrix(&x, &y)?;
    println!("{:<9} |K - W(x) W(y)^-1| / |K| = {:.2e}", "limit", factor_gap(&k, &w_matrix(&x)?, &w_matrix(&y)?));

    let s = CMatrix::from_fn(4, |i, j| Complex64::new(if i == j { 1.0 } else { 0.0 } + 0.3 * (i as f64 - j as f64).sin(), 0.2 * (i + 2 * j) as f64 / 7.0));
    let (_, kernel, gx, gy) = &cases[0];
    let target = g_matrix(kernel, &x, &y, lambda + y.sum())?;
    println!(
        "\ngauged by S: {:.2e} (ungauged {:.2e})",
        factor_gap(&target, &mat_mul(gx, &s)?, &mat_mul(gy, &s)?),
        factor_gap(&target, gx, gy)
    );
    Ok(())
}
