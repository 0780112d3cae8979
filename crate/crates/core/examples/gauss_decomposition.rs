//! Explicit `C = U D L` decomposition of the elliptic Cauchy matrix.

use elliptic_cauchy::cauchy::{cauchy_matrix, frobenius_det, gauss_ladder, gauss_udl, Instance, Kernel};
use elliptic_cauchy::linalg::{mat_mul, rel_residual, structure_check, Structure};
use elliptic_cauchy::verify::{random_instance, SuiteConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SuiteConfig::default();
    let lat = cfg.lattice()?;
    let inst: Instance = random_instance(&cfg, &Kernel::Elliptic(lat.clone()), 6, 7, false)?;

    println!("lambda ladder:");
    for (j, l) in gauss_ladder(inst.x(), inst.y(), inst.lambda()).iter().enumerate() {
        println!("  lambda_{} = {l:.6}", j + 1);
    }

    let udl = gauss_udl(&lat, inst.x(), inst.y(), inst.lambda())?;
    let c = cauchy_matrix(&inst)?;
    let product = mat_mul(&udl.upper, &mat_mul(&udl.diag, &udl.lower)?)?;
    println!("|UDL - C| / |C| = {:.2e}", rel_residual(&product, &c)?);
    println!(
        "U unit upper: {}, D diagonal: {}, L unit lower: {}",
        structure_check(&udl.upper, Structure::UnitUpper, 1e-12),
        structure_check(&udl.diag, Structure::Diagonal, 1e-12),
        structure_check(&udl.lower, Structure::UnitLower, 1e-12),
    );

    let det_d = udl.diag.diag().iter().product::<elliptic_cauchy::Complex64>();
    let det = frobenius_det(&inst)?;
    println!("prod D_jj = {det_d:.12}\ndet C     = {det:.12}");
    Ok(())
}
