//! Elliptic Cauchy matrices built from the Weierstrass sigma function, their
//! trigonometric and rational degenerations, and a seeded harness that checks
//! the determinant, inverse, product, factorization and Gauss decomposition
//! identities numerically.
//!
//! - [`weierstrass`]: sigma, zeta and the quasi-periods of a lattice
//! - [`linalg`]: small dense complex matrices with LU
//! - [`cauchy`]: the matrix builders and their closed forms
//! - [`verify`]: residual checks over random instances
//! - [`cli`]: the `elliptic-cauchy` command line
//!
//! ```
//! use elliptic_cauchy::cauchy::{cauchy_matrix, frobenius_det, Instance, Kernel, PointSet};
//! use elliptic_cauchy::linalg::lu_det;
//! use elliptic_cauchy::weierstrass::Lattice;
//! use elliptic_cauchy::Complex64;
//!
//! let lat = Lattice::from_tau(Complex64::new(0.3, 0.7), 1e-16).unwrap();
//! let x = PointSet::new(vec![Complex64::new(0.1, 0.2), Complex64::new(-0.4, 0.1)]).unwrap();
//! let y = PointSet::new(vec![Complex64::new(0.5, 0.4), Complex64::new(-0.2, 0.45)]).unwrap();
//! let inst = Instance::new(Kernel::Elliptic(lat), x, y, None, Complex64::new(0.37, 0.11), 0).unwrap();
//! let closed = frobenius_det(&inst).unwrap();
//! assert!((lu_det(&cauchy_matrix(&inst).unwrap()) - closed).norm() < 1e-12 * closed.norm());
//! ```

pub mod cauchy;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod verify;
pub mod weierstrass;

pub use num_complex::Complex64;
