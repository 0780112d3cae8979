//! Weierstrass sigma and zeta functions.
//!
//! Evaluation goes through the odd Jacobi theta function
//!
//! ```text
//! sigma(x) = (2w/pi) exp(eta x^2 / (2w)) theta1(v, q) / theta1'(0, q),   v = pi x / (2w)
//! ```
//!
//! with `theta1(v, q) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) v)` and
//! nome `q = exp(i pi w'/w)`. Arguments are first reduced into the fundamental
//! cell of the period lattice `2w m + 2w' m'`; the quasi-periodicity factor is
//! applied afterwards in closed form. Without the reduction the theta series
//! loses all accuracy once `|Im v|` grows.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Arguments whose cell-reduced image is closer than this to zero are lattice points.
pub const LATTICE_POINT_TOL: f64 = 1e-12;

const MAX_SERIES_TERMS: usize = 10_000;

/// Period lattice of the Weierstrass functions, with the derived constants.
///
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    omega: Complex64,
    omega_prime: Complex64,
    tau: Complex64,
    eta: Complex64,
    eta_prime: Complex64,
    nome: Complex64,
    series_tol: f64,
    // theta1'(0, q), the normalizer of every sigma evaluation
    theta1_prime0: Complex64,
}

/// An argument split into a cell representative and a lattice vector:
/// `x = x_reduced + 2 m omega + 2 m_prime omega_prime`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellReduced {
    pub x_reduced: Complex64,
    pub m: i64,
    pub m_prime: i64,
}

/// `exp(i pi tau (n + 1/2)^2)`
#[inline]
fn nome_power(tau: Complex64, n: usize) -> Complex64 {
    let h = n as f64 + 0.5;
    (Complex64::i() * PI * tau * (h * h)).exp()
}

#[inline]
fn alternating(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sums `2 sum_n (-1)^n q^{(n+1/2)^2} f(n)` until a term drops below
/// `tol` relative to the partial sum.
fn theta_series(tau: Complex64, tol: f64, mut f: impl FnMut(usize) -> Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..MAX_SERIES_TERMS {
        let term = nome_power(tau, n) * f(n) * alternating(n);
        sum += term;
        if term.norm() <= tol * sum.norm() {
            break;
        }
    }
    sum * 2.0
}

impl Lattice {
    /// Builds the lattice with half-periods `omega`, `omega_prime`.
    ///
    /// `eta` comes from the theta series, `eta = -(pi^2 / (12 omega)) theta1'''(0) / theta1'(0)`,
    /// and `eta_prime` from the Legendre relation `2 eta omega' - 2 eta' omega = i pi`.
    pub fn new(omega: Complex64, omega_prime: Complex64, series_tol: f64) -> Result<Self> {
        if !(omega.is_finite() && omega_prime.is_finite()) {
            return Err(Error::InvalidLattice("non-finite half-period".into()));
        }
        if omega.norm() == 0.0 || omega_prime.norm() == 0.0 {
            return Err(Error::InvalidLattice("zero half-period".into()));
        }
        if !(series_tol > 0.0 && series_tol <= 1e-6) {
            return Err(Error::InvalidLattice(format!(
                "series_tol {series_tol:e} outside (0, 1e-6]"
            )));
        }
        let tau = omega_prime / omega;
        if !(tau.im > 0.0) {
            return Err(Error::InvalidLattice(format!(
                "Im(omega'/omega) = {} is not positive",
                tau.im
            )));
        }

        let nome = (Complex64::i() * PI * tau).exp();
        let theta1_prime0 = theta_series(tau, series_tol, |n| Complex64::from((2 * n + 1) as f64));
        let theta1_third0 =
            -theta_series(tau, series_tol, |n| Complex64::from(((2 * n + 1) as f64).powi(3)));
        let eta = -(PI * PI / (12.0 * omega)) * theta1_third0 / theta1_prime0;
        let eta_prime = (2.0 * eta * omega_prime - Complex64::i() * PI) / (2.0 * omega);

        Ok(Self {
            omega,
            omega_prime,
            tau,
            eta,
            eta_prime,
            nome,
            series_tol,
            theta1_prime0,
        })
    }

    /// Lattice with `omega = 1`, `omega_prime = tau`.
    pub fn from_tau(tau: Complex64, series_tol: f64) -> Result<Self> {
        Self::new(Complex64::new(1.0, 0.0), tau, series_tol)
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    pub fn omega_prime(&self) -> Complex64 {
        self.omega_prime
    }

    /// `omega_prime / omega`
    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    /// `zeta(omega)`
    pub fn eta(&self) -> Complex64 {
        self.eta
    }

    /// `zeta(omega_prime)`
    pub fn eta_prime(&self) -> Complex64 {
        self.eta_prime
    }

    pub fn nome(&self) -> Complex64 {
        self.nome
    }

    pub fn series_tol(&self) -> f64 {
        self.series_tol
    }

    /// `|2 eta omega' - 2 eta' omega - i pi|`
    pub fn legendre_residual(&self) -> f64 {
        (2.0 * self.eta * self.omega_prime - 2.0 * self.eta_prime * self.omega
            - Complex64::i() * PI)
            .norm()
    }

    /// Lattice vector `2 m omega + 2 m' omega'`.
    pub fn period(&self, m: i64, m_prime: i64) -> Complex64 {
        2.0 * (self.omega * m as f64 + self.omega_prime * m_prime as f64)
    }

    /// Real coordinates `(a, b)` of `x = a (2 omega) + b (2 omega')`.
    pub fn cell_coordinates(&self, x: Complex64) -> (f64, f64) {
        let z = x / (2.0 * self.omega);
        let b = z.im / self.tau.im;
        let a = z.re - b * self.tau.re;
        (a, b)
    }

    /// Reduces `x` to the cell whose coordinates lie in `[-1/2, 1/2)`.
    pub fn reduce_to_cell(&self, x: Complex64) -> CellReduced {
        let (a, b) = self.cell_coordinates(x);
        let m = (a + 0.5).floor() as i64;
        let m_prime = (b + 0.5).floor() as i64;
        let x_reduced = if m == 0 && m_prime == 0 {
            x
        } else {
            x - self.period(m, m_prime)
        };
        CellReduced {
            x_reduced,
            m,
            m_prime,
        }
    }

    /// Distance from `x` to the nearest lattice point.
    pub fn lattice_distance(&self, x: Complex64) -> f64 {
        let r = self.reduce_to_cell(x).x_reduced;
        let mut best = f64::INFINITY;
        for m in -1..=1 {
            for mp in -1..=1 {
                best = best.min((r - self.period(m, mp)).norm());
            }
        }
        best
    }

    pub fn is_lattice_point(&self, x: Complex64) -> bool {
        self.reduce_to_cell(x).x_reduced.norm() < LATTICE_POINT_TOL
    }

    /// sigma on the fundamental cell, straight from the theta series.
    fn sigma_in_cell(&self, x: Complex64) -> Complex64 {
        let two_omega = 2.0 * self.omega;
        let v = PI * x / two_omega;
        let theta1 = theta_series(self.tau, self.series_tol, |n| ((2 * n + 1) as f64 * v).sin());
        (two_omega / PI) * (self.eta * x * x / two_omega).exp() * theta1 / self.theta1_prime0
    }

    /// zeta on the fundamental cell: `eta x / omega + (pi / (2 omega)) theta1'(v) / theta1(v)`.
    fn zeta_in_cell(&self, x: Complex64) -> Complex64 {
        let two_omega = 2.0 * self.omega;
        let v = PI * x / two_omega;
        let tol = self.series_tol;
        let theta1 = theta_series(self.tau, tol, |n| ((2 * n + 1) as f64 * v).sin());
        let theta1_d = theta_series(self.tau, tol, |n| {
            let k = (2 * n + 1) as f64;
            k * (k * v).cos()
        });
        self.eta * x / self.omega + (PI / two_omega) * theta1_d / theta1
    }

    /// Weierstrass sigma function.
    ///
    /// Entire, so there are no error cases. For astronomically large `|x|` the
    /// quasi-periodicity factor overflows and the result is non-finite.
    pub fn sigma(&self, x: Complex64) -> Complex64 {
        let cell = self.reduce_to_cell(x);
        let base = self.sigma_in_cell(cell.x_reduced);
        if cell.m == 0 && cell.m_prime == 0 {
            return base;
        }
        // sigma(u + 2w) = (-1)^{m + m' + m m'} exp(2 eta_w (u + w)) sigma(u),
        // w = m omega + m' omega', eta_w = m eta + m' eta'
        let (m, mp) = (cell.m, cell.m_prime);
        let w = self.omega * m as f64 + self.omega_prime * mp as f64;
        let eta_w = self.eta * m as f64 + self.eta_prime * mp as f64;
        let sign = if (m + mp + m * mp).rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        };
        base * (2.0 * eta_w * (cell.x_reduced + w)).exp() * sign
    }

    /// Weierstrass zeta function `sigma'(x) / sigma(x)`.
    pub fn zeta(&self, x: Complex64) -> Result<Complex64> {
        let cell = self.reduce_to_cell(x);
        if cell.x_reduced.norm() < LATTICE_POINT_TOL {
            return Err(Error::PoleAtLatticePoint(format!("{x}")));
        }
        let shift = 2.0 * (self.eta * cell.m as f64 + self.eta_prime * cell.m_prime as f64);
        Ok(self.zeta_in_cell(cell.x_reduced) + shift)
    }

    /// The auxiliary function
    /// `sigma^(k)(x) = exp(2 eta' k x) prod_{l=0}^{N-1} sigma(x + ((N - 2l - 1)/N) omega - (2k/N) omega')`
    /// with `N = n_size`. Expects `1 <= k <= n_size`.
    pub fn sigma_k(&self, n_size: usize, k: usize, x: Complex64) -> Complex64 {
        debug_assert!(n_size >= 1 && (1..=n_size).contains(&k));
        let nf = n_size as f64;
        let kf = k as f64;
        let shift_prime = self.omega_prime * (2.0 * kf / nf);
        let product = (0..n_size)
            .map(|l| {
                let c = (nf - 2.0 * l as f64 - 1.0) / nf;
                self.sigma(x + self.omega * c - shift_prime)
            })
            .fold(Complex64::new(1.0, 0.0), |acc, s| acc * s);
        (2.0 * self.eta_prime * kf * x).exp() * product
    }
}

/// Free-function form of [`Lattice::new`].
pub fn lattice_new(omega: Complex64, omega_prime: Complex64, series_tol: f64) -> Result<Lattice> {
    Lattice::new(omega, omega_prime, series_tol)
}

pub fn reduce_to_cell(lat: &Lattice, x: Complex64) -> CellReduced {
    lat.reduce_to_cell(x)
}

pub fn sigma(lat: &Lattice, x: Complex64) -> Complex64 {
    lat.sigma(x)
}

pub fn zeta_w(lat: &Lattice, x: Complex64) -> Result<Complex64> {
    lat.zeta(x)
}

pub fn sigma_k(lat: &Lattice, n_size: usize, k: usize, x: Complex64) -> Complex64 {
    lat.sigma_k(n_size, k, x)
}
