//! Gauss (UDL) decomposition of the elliptic Cauchy matrix in closed form.

use num_complex::Complex64;

use super::{Kernel, PointSet};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::weierstrass::Lattice;

/// `C = upper * diag * lower` with unit triangular outer factors.
#[derive(Debug, Clone)]
pub struct GaussUdl {
    pub upper: CMatrix,
    pub diag: CMatrix,
    pub lower: CMatrix,
}

/// `lambda_j = lambda + sum_{l > j} (x_l - y_l)` for `j = 0..N` (zero-based),
/// accumulated from the top so that `lambda_{N-1} = lambda` exactly.
pub fn gauss_ladder(x: &PointSet, y: &PointSet, lambda: Complex64) -> Vec<Complex64> {
    let n = x.len();
    let mut ladder = vec![lambda; n];
    for j in (0..n.saturating_sub(1)).rev() {
        ladder[j] = ladder[j + 1] + (x[j + 1] - y[j + 1]);
    }
    ladder
}

pub fn gauss_udl(lat: &Lattice, x: &PointSet, y: &PointSet, lambda: Complex64) -> Result<GaussUdl> {
    let n = x.len();
    if y.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: y.len(),
        });
    }
    let k = Kernel::Elliptic(lat.clone());
    let s = |u: Complex64| k.eval(u);
    let nz = |u: Complex64, what| k.nonzero(u, what);
    let ladder = gauss_ladder(x, y, lambda);

    let mut upper = CMatrix::zeros(n);
    let mut diag = CMatrix::zeros(n);
    let mut lower = CMatrix::zeros(n);

    for j in 0..n {
        let lj = ladder[j];
        let f_lj = nz(lj, "lambda_j")?;
        let xy_j = nz(x[j] - y[j], "x_j - y_j")?;
        let norm_j = nz(x[j] - y[j] + lj, "x_j - y_j + lambda_j")?;

        let mut d = norm_j / (f_lj * xy_j);
        for l in j + 1..n {
            d *= s(x[j] - x[l]) * s(y[j] - y[l])
                / (nz(x[j] - y[l], "x_j - y_l")? * nz(y[j] - x[l], "y_j - x_l")?);
        }
        diag[(j, j)] = d;

        for i in 0..=j {
            let mut u = s(x[i] - y[j] + lj) * xy_j / (norm_j * nz(x[i] - y[j], "x_i - y_j")?);
            for l in j + 1..n {
                u *= s(x[i] - x[l]) * s(x[j] - y[l])
                    / (nz(x[j] - x[l], "x_j - x_l")? * nz(x[i] - y[l], "x_i - y_l")?);
            }
            upper[(i, j)] = u;
        }

        for kk in 0..=j {
            let mut v = s(x[j] - y[kk] + lj) * xy_j / (norm_j * nz(x[j] - y[kk], "x_j - y_k")?);
            for l in j + 1..n {
                v *= s(y[kk] - y[l]) * s(y[j] - x[l])
                    / (nz(y[kk] - x[l], "y_k - x_l")? * nz(y[j] - y[l], "y_j - y_l")?);
            }
            lower[(j, kk)] = v;
        }
    }

    Ok(GaussUdl { upper, diag, lower })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::kernel_cauchy;

    #[test]
    fn n1_is_trivial() {
        let lat = Lattice::from_tau(Complex64::new(0.3, 0.7), 1e-15).unwrap();
        let x = PointSet::new(vec![Complex64::new(0.3, 0.1)]).unwrap();
        let y = PointSet::new(vec![Complex64::new(-0.2, 0.2)]).unwrap();
        let lam = Complex64::new(0.25, -0.3);
        let udl = gauss_udl(&lat, &x, &y, lam).unwrap();
        assert_eq!(udl.upper, CMatrix::identity(1));
        assert_eq!(udl.lower, CMatrix::identity(1));
        let c = kernel_cauchy(&Kernel::Elliptic(lat), &x, &y, lam).unwrap();
        assert!((udl.diag[(0, 0)] - c[(0, 0)]).norm() < 1e-15 * c[(0, 0)].norm());
    }

    #[test]
    fn ladder_top_is_lambda() {
        let x = PointSet::real(&[1.0, 2.0, 3.0]).unwrap();
        let y = PointSet::real(&[0.5, 0.25, 0.125]).unwrap();
        let lam = Complex64::new(0.1, 0.0);
        let l = gauss_ladder(&x, &y, lam);
        assert_eq!(l[2], lam);
        assert!((l[1] - (lam + 3.0 - 0.125)).norm() < 1e-15);
        assert!((l[0] - (lam + 3.0 - 0.125 + 2.0 - 0.25)).norm() < 1e-15);
    }
}
