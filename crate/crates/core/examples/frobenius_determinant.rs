//! Determinant and inverse of the elliptic Cauchy matrix: LU against the
//! closed forms, and the classic `1/(x - y)` case for comparison.

use elliptic_cauchy::cauchy::{
    cauchy_inverse_closed, cauchy_matrix, classic_cauchy, classic_cauchy_det,
    classic_cauchy_inverse, frobenius_det, Instance, Kernel, PointSet,
};
use elliptic_cauchy::linalg::{lu_det, mat_mul, max_abs_residual, CMatrix};
use elliptic_cauchy::weierstrass::Lattice;
use elliptic_cauchy::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lat = Lattice::from_tau(c(0.3, 0.7), 1e-16)?;
    let x = PointSet::new(vec![c(0.1, 0.2), c(-0.4, 0.1), c(0.35, -0.3), c(-0.1, -0.25)])?;
    let y = PointSet::new(vec![c(0.5, 0.4), c(-0.2, 0.45), c(0.7, -0.1), c(-0.6, -0.35)])?;
    let inst = Instance::new(Kernel::Elliptic(lat), x.clone(), y.clone(), None, c(0.37, 0.11), 0)?;

    let cm = cauchy_matrix(&inst)?;
    let by_lu = lu_det(&cm);
    let closed = frobenius_det(&inst)?;
    println!("det by LU     = {by_lu:.15}");
    println!("closed form   = {closed:.15}");
    println!("relative gap  = {:.2e}", (by_lu - closed).norm() / closed.norm());

    let inv = cauchy_inverse_closed(&inst)?;
    let id = CMatrix::identity(inst.n());
    println!("|C C^-1 - I|  = {:.2e}", max_abs_residual(&mat_mul(&cm, &inv)?, &id)?);

    let cc = classic_cauchy(&x, &y)?;
    let det = classic_cauchy_det(&x, &y)?;
    println!("\nclassic det gap = {:.2e}", (lu_det(&cc) - det).norm() / det.norm());
    let cinv = classic_cauchy_inverse(&x, &y)?;
    println!("classic |C C^-1 - I| = {:.2e}", max_abs_residual(&mat_mul(&cc, &cinv)?, &id)?);
    Ok(())
}
