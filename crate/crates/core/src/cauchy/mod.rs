//! Elliptic Cauchy matrices and the matrices built around them.
//!
//! Every builder is parameterized by a [`Kernel`], the sigma-like function
//! `f` entering `C_ij = f(x_i - y_j + lambda) / (f(lambda) f(x_i - y_j))`:
//! the Weierstrass sigma function, `sin` (trigonometric degeneration) or the
//! identity (rational degeneration).

mod bloch;
mod builders;
mod factor;
mod gauss;

use std::f64::consts::PI;
use std::fmt;
use std::ops::Index;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weierstrass::{Lattice, LATTICE_POINT_TOL};

pub use bloch::{bloch_eval, bloch_transport};
pub use builders::{
    cauchy_inverse_closed, cauchy_matrix, classic_cauchy, classic_cauchy_det,
    classic_cauchy_inverse, d_diagonal, d_matrix, frobenius_det, frobenius_det_with, g_matrix,
    h_matrix, inverse_closed_with, k_matrix, kernel_cauchy,
};
pub use factor::{
    g_factor_elliptic, g_factor_rat, g_factor_trig, lagrange_power_sum, trig_phi, trig_phi_tilde,
    w_matrix,
};
pub use gauss::{gauss_ladder, gauss_udl, GaussUdl};

/// Default minimal separation between points of one set.
pub const DEFAULT_SEP_MIN: f64 = 1e-6;

/// Threshold below which a kernel argument counts as a zero of the kernel.
pub const KERNEL_ZERO_TOL: f64 = LATTICE_POINT_TOL;

/// Ordered set of pairwise distinct complex points.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Complex64>,
    label: Option<String>,
}

impl PointSet {
    /// Validates pairwise distinctness with [`DEFAULT_SEP_MIN`].
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        Self::with_sep_min(points, DEFAULT_SEP_MIN)
    }

    pub fn with_sep_min(points: Vec<Complex64>, sep_min: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidPointSet("empty point set".into()));
        }
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidPointSet(format!("non-finite point {p}")));
        }
        for i in 0..points.len() {
            for j in 0..i {
                let d = (points[i] - points[j]).norm();
                if d < sep_min {
                    return Err(Error::InvalidPointSet(format!(
                        "points {j} and {i} are {d:e} apart (min {sep_min:e})"
                    )));
                }
            }
        }
        Ok(Self {
            points,
            label: None,
        })
    }

    /// Real-axis points, mostly for tests and examples.
    pub fn real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.points.iter()
    }

    /// Sum of the points (the `X`, `Y`, `Z` of the identities).
    pub fn sum(&self) -> Complex64 {
        self.points.iter().sum()
    }

    /// Every point translated by `eps`.
    pub fn shifted(&self, eps: Complex64) -> Self {
        Self {
            points: self.points.iter().map(|p| p + eps).collect(),
            label: self.label.clone(),
        }
    }

    /// Every point multiplied by `s` (nonzero).
    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            points: self.points.iter().map(|p| p * s).collect(),
            label: self.label.clone(),
        }
    }
}

impl Index<usize> for PointSet {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.points[i]
    }
}

/// Tag used in reports; `RationalLimit` marks the `lambda -> infinity`
/// forms (`K` and `W`) which have no kernel function of their own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelTag {
    Elliptic,
    #[serde(rename = "trig")]
    Trigonometric,
    Rational,
    RationalLimit,
}

impl KernelTag {
    pub fn as_str(self) -> &'static str {
        match self {
            KernelTag::Elliptic => "elliptic",
            KernelTag::Trigonometric => "trig",
            KernelTag::Rational => "rational",
            KernelTag::RationalLimit => "rational_limit",
        }
    }
}

impl fmt::Display for KernelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// The sigma-like function shared by the generic builders.
#[derive(Debug, Clone, PartialEq)]
pub enum Kernel {
    /// Weierstrass sigma on the given lattice.
    Elliptic(Lattice),
    /// `sin(x)`.
    Trigonometric,
    /// `x`.
    Rational,
}

impl Kernel {
    #[inline]
    pub fn eval(&self, u: Complex64) -> Complex64 {
        match self {
            Kernel::Elliptic(lat) => lat.sigma(u),
            Kernel::Trigonometric => u.sin(),
            Kernel::Rational => u,
        }
    }

    /// Distance from `u` to the nearest zero of the kernel.
    pub fn zero_distance(&self, u: Complex64) -> f64 {
        match self {
            Kernel::Elliptic(lat) => lat.lattice_distance(u),
            Kernel::Trigonometric => (u - PI * (u.re / PI).round()).norm(),
            Kernel::Rational => u.norm(),
        }
    }

    pub fn is_zero(&self, u: Complex64) -> bool {
        match self {
            Kernel::Elliptic(lat) => lat.is_lattice_point(u),
            _ => self.zero_distance(u) < KERNEL_ZERO_TOL,
        }
    }

    /// Evaluates the kernel at an argument that must not be one of its zeros.
    pub(crate) fn nonzero(&self, u: Complex64, what: &'static str) -> Result<Complex64> {
        if self.is_zero(u) {
            return Err(Error::KernelZero {
                what,
                arg: format!("{u}"),
            });
        }
        Ok(self.eval(u))
    }

    pub fn tag(&self) -> KernelTag {
        match self {
            Kernel::Elliptic(_) => KernelTag::Elliptic,
            Kernel::Trigonometric => KernelTag::Trigonometric,
            Kernel::Rational => KernelTag::Rational,
        }
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        match self {
            Kernel::Elliptic(lat) => Some(lat),
            _ => None,
        }
    }
}

/// A complete input for the identities: kernel, point sets and `lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    kernel: Kernel,
    x: PointSet,
    y: PointSet,
    z: Option<PointSet>,
    lambda: Complex64,
    seed: u64,
}

impl Instance {
    /// Checks equal sizes, cross-set distinctness, `lambda` away from the
    /// kernel zeros and, for the elliptic kernel, `lambda + X - Y` as well.
    pub fn new(
        kernel: Kernel,
        x: PointSet,
        y: PointSet,
        z: Option<PointSet>,
        lambda: Complex64,
        seed: u64,
    ) -> Result<Self> {
        let n = x.len();
        let sets: Vec<&PointSet> = [Some(&x), Some(&y), z.as_ref()].into_iter().flatten().collect();
        if let Some(bad) = sets.iter().find(|s| s.len() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: bad.len(),
            });
        }
        for (a, sa) in sets.iter().enumerate() {
            for sb in &sets[a + 1..] {
                for p in sa.iter() {
                    for q in sb.iter() {
                        if (p - q).norm() < DEFAULT_SEP_MIN || kernel.is_zero(p - q) {
                            return Err(Error::InvalidPointSet(format!(
                                "points {p} and {q} of different sets coincide"
                            )));
                        }
                    }
                }
            }
        }
        kernel.nonzero(lambda, "lambda")?;
        if matches!(kernel, Kernel::Elliptic(_)) {
            kernel.nonzero(lambda + x.sum() - y.sum(), "lambda + X - Y")?;
        }
        Ok(Self {
            kernel,
            x,
            y,
            z,
            lambda,
            seed,
        })
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn x(&self) -> &PointSet {
        &self.x
    }

    pub fn y(&self) -> &PointSet {
        &self.y
    }

    pub fn z(&self) -> Option<&PointSet> {
        self.z.as_ref()
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Human-readable dump for replaying a failure.
    pub fn dump(&self) -> String {
        let fmt_set = |s: &PointSet| {
            s.iter()
                .map(|p| format!("{:.17e}{:+.17e}i", p.re, p.im))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut out = format!(
            "kernel={} seed={} n={} lambda={:.17e}{:+.17e}i",
            self.kernel.tag(),
            self.seed,
            self.n(),
            self.lambda.re,
            self.lambda.im
        );
        if let Kernel::Elliptic(lat) = &self.kernel {
            out += &format!(" omega={} omega_prime={}", lat.omega(), lat.omega_prime());
        }
        out += &format!(" x=[{}] y=[{}]", fmt_set(&self.x), fmt_set(&self.y));
        if let Some(z) = &self.z {
            out += &format!(" z=[{}]", fmt_set(z));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_set_rejects_coincidence() {
        assert!(PointSet::real(&[1.0, 2.0, 1.0]).is_err());
        assert!(PointSet::real(&[]).is_err());
        let s = PointSet::real(&[1.0, 2.0]).unwrap().labelled("x");
        assert_eq!(s.label(), Some("x"));
        assert_eq!(s.sum(), Complex64::new(3.0, 0.0));
    }

    #[test]
    fn kernel_zeros() {
        assert!(Kernel::Trigonometric.is_zero(Complex64::new(PI * 3.0, 0.0)));
        assert!(!Kernel::Trigonometric.is_zero(Complex64::new(PI * 3.0, 0.1)));
        assert!(Kernel::Rational.is_zero(Complex64::new(0.0, 0.0)));
        let lat = Lattice::from_tau(Complex64::new(0.3, 0.7), 1e-15).unwrap();
        let k = Kernel::Elliptic(lat.clone());
        assert!(k.is_zero(lat.period(-2, 3)));
        assert!((k.zero_distance(lat.period(1, 1) + 0.25) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn instance_validation() {
        let x = PointSet::real(&[0.1, 0.4]).unwrap();
        let y = PointSet::real(&[0.2, 0.1]).unwrap();
        let lambda = Complex64::new(0.3, 0.2);
        assert!(Instance::new(Kernel::Rational, x.clone(), y, None, lambda, 0).is_err());
        let y = PointSet::real(&[0.2, 0.7]).unwrap();
        assert!(Instance::new(
            Kernel::Rational,
            x.clone(),
            y.clone(),
            None,
            Complex64::new(0.0, 0.0),
            0
        )
        .is_err());
        let short = PointSet::real(&[0.9]).unwrap();
        assert!(matches!(
            Instance::new(Kernel::Rational, x.clone(), short, None, lambda, 0),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(Instance::new(Kernel::Rational, x, y, None, lambda, 0).is_ok());
    }
}
