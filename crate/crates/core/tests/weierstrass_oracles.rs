//! sigma, zeta and eta against independent lattice sums, finite differences and
//! structural properties.

use elliptic_cauchy::error::Error;
use elliptic_cauchy::weierstrass::Lattice;
use elliptic_cauchy::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn lattices() -> Vec<Lattice> {
    vec![
        Lattice::from_tau(c(0.3, 0.7), 1e-16).unwrap(),
        Lattice::from_tau(c(0.0, 1.0), 1e-16).unwrap(),
        Lattice::from_tau(c(-0.45, 1.3), 1e-16).unwrap(),
        Lattice::new(c(0.8, 0.1), c(0.2, 1.1), 1e-16).unwrap(),
    ]
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// Sum of `f(w)` over nonzero `w = 2 m omega + 2 m' omega'` with `|m|, |m'| <= big`.
fn box_sum(lat: &Lattice, big: i64, f: impl Fn(Complex64) -> Complex64) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for m in -big..=big {
        for mp in -big..=big {
            if m != 0 || mp != 0 {
                s += f(lat.period(m, mp));
            }
        }
    }
    s
}

/// Box sums with tails `A/M^2 + B/M^3 + ...`, extrapolated from `M`, `2M`, `4M`.
fn richardson(lat: &Lattice, big: i64, f: impl Fn(Complex64) -> Complex64) -> Complex64 {
    let s: Vec<Complex64> = [1, 2, 4].iter().map(|k| box_sum(lat, k * big, &f)).collect();
    let r1 = (4.0 * s[1] - s[0]) / 3.0;
    let r2 = (4.0 * s[2] - s[1]) / 3.0;
    (8.0 * r2 - r1) / 7.0
}

/// `log(1 - u) + u + u^2/2`, by series when `u` is small.
fn log_weierstrass_factor(u: Complex64) -> Complex64 {
    if u.norm() < 0.1 {
        let mut term = u * u;
        let mut s = Complex64::new(0.0, 0.0);
        for k in 3..40 {
            term *= u;
            s -= term / k as f64;
        }
        s
    } else {
        (1.0 - u).ln() + u + u * u / 2.0
    }
}

fn sigma_product(lat: &Lattice, z: Complex64) -> Complex64 {
    z * richardson(lat, 24, |w| log_weierstrass_factor(z / w)).exp()
}

fn zeta_sum(lat: &Lattice, z: Complex64) -> Complex64 {
    1.0 / z + richardson(lat, 24, |w| 1.0 / (z - w) + 1.0 / w + z / (w * w))
}

fn sample_points(lat: &Lattice, count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a: f64 = rng.gen_range(-0.5..0.5);
            let b: f64 = rng.gen_range(-0.5..0.5);
            2.0 * (lat.omega() * a + lat.omega_prime() * b)
        })
        .filter(|z| z.norm() > 0.05)
        .collect()
}

#[test]
fn sigma_matches_weierstrass_product() {
    for lat in lattices() {
        for z in sample_points(&lat, 4, 1) {
            let got = lat.sigma(z);
            let want = sigma_product(&lat, z);
            assert!(rel(got, want) < 1e-8, "tau={} z={z}: {got} vs {want}", lat.tau());
        }
    }
}

#[test]
fn zeta_matches_lattice_sum() {
    for lat in lattices() {
        for z in sample_points(&lat, 4, 2) {
            let got = lat.zeta(z).unwrap();
            let want = zeta_sum(&lat, z);
            assert!(rel(got, want) < 1e-8, "tau={} z={z}: {got} vs {want}", lat.tau());
        }
    }
}

#[test]
fn quasi_periods_match_lattice_sum() {
    for lat in lattices() {
        let eta = zeta_sum(&lat, lat.omega());
        let eta_prime = zeta_sum(&lat, lat.omega_prime());
        assert!(rel(lat.eta(), eta) < 1e-8, "eta {} vs {eta}", lat.eta());
        assert!(rel(lat.eta_prime(), eta_prime) < 1e-8, "eta' {} vs {eta_prime}", lat.eta_prime());
    }
}

#[test]
fn zeta_is_log_derivative_of_sigma() {
    let h = 1e-4;
    for lat in lattices() {
        for z in sample_points(&lat, 10, 3) {
            // fourth-order central difference
            let d = (-lat.sigma(z + 2.0 * h) + 8.0 * lat.sigma(z + h) - 8.0 * lat.sigma(z - h)
                + lat.sigma(z - 2.0 * h))
                / (12.0 * h);
            let want = d / lat.sigma(z);
            assert!(rel(lat.zeta(z).unwrap(), want) < 1e-8, "z={z}");
        }
    }
}

#[test]
fn sigma_is_odd_and_normalized() {
    for lat in lattices() {
        for z in sample_points(&lat, 20, 4) {
            let far = z + lat.period(2, -1);
            assert!((lat.sigma(-z) + lat.sigma(z)).norm() <= 1e-14 * lat.sigma(z).norm());
            assert!(rel(lat.sigma(-far), -lat.sigma(far)) < 1e-12);
        }
        let eps = c(1e-7, 2e-7);
        assert!(rel(lat.sigma(eps), eps) < 1e-12);
    }
}

#[test]
fn zeta_is_odd_with_poles_on_the_lattice() {
    for lat in lattices() {
        for z in sample_points(&lat, 10, 5) {
            assert!(rel(lat.zeta(-z).unwrap(), -lat.zeta(z).unwrap()) < 1e-12);
        }
        for (m, mp) in [(0, 0), (1, 0), (-2, 3)] {
            assert!(matches!(lat.zeta(lat.period(m, mp)), Err(Error::PoleAtLatticePoint(_))));
        }
    }
}

#[test]
fn sigma_ratio_with_balanced_zeros_is_elliptic() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for lat in lattices() {
        let a = [c(0.1, 0.2), c(-0.3, 0.05), c(0.25, -0.4)];
        let shift = c(0.07, -0.11);
        // b has the same sum as a
        let b = [a[0] + shift, a[1] - 2.0 * shift, a[2] + shift];
        let ratio = |z: Complex64| -> Complex64 {
            a.iter().zip(&b).map(|(&ai, &bi)| lat.sigma(z - ai) / lat.sigma(z - bi)).product()
        };
        for _ in 0..10 {
            let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let r0 = ratio(z);
            for (m, mp) in [(1, 0), (0, 1), (-1, 2)] {
                assert!(rel(ratio(z + lat.period(m, mp)), r0) < 1e-10, "z={z} ({m},{mp})");
            }
        }
    }
}

#[test]
fn sigma_k_quasi_periodicity() {
    for lat in lattices() {
        let pts = sample_points(&lat, 12, 7);
        for n in 1..=6usize {
            let nf = n as f64;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            for k in 1..=n {
                for &x in &pts {
                    let s = lat.sigma_k(n, k, x);
                    let w = lat.omega();
                    let wp = lat.omega_prime();
                    let along = sign * (2.0 * lat.eta() * nf * (x + w)).exp() * s;
                    let across = sign * (2.0 * lat.eta_prime() * nf * (x + wp)).exp() * s;
                    assert!(rel(lat.sigma_k(n, k, x + 2.0 * w), along) < 1e-10);
                    assert!(rel(lat.sigma_k(n, k, x + 2.0 * wp), across) < 1e-10);
                }
            }
        }
    }
}

#[test]
fn reduction_lands_in_cell() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for lat in lattices() {
        for _ in 0..200 {
            let x = c(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
            let r = lat.reduce_to_cell(x);
            let (a, b) = lat.cell_coordinates(r.x_reduced);
            assert!((-0.5 - 1e-12..0.5 + 1e-12).contains(&a), "a={a}");
            assert!((-0.5 - 1e-12..0.5 + 1e-12).contains(&b), "b={b}");
            assert!((r.x_reduced + lat.period(r.m, r.m_prime) - x).norm() < 1e-12);
        }
    }
}

#[test]
fn legendre_relation_on_many_lattices() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let omega = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0));
        let tau = c(rng.gen_range(-1.0..1.0), rng.gen_range(0.3..3.0));
        let lat = Lattice::new(omega, omega * tau, 1e-16).unwrap();
        assert!(lat.legendre_residual() < 1e-12, "omega={omega} tau={tau}");
    }
}

#[test]
fn rejects_degenerate_input() {
    assert!(matches!(Lattice::new(c(1.0, 0.0), c(2.0, 0.0), 1e-16), Err(Error::InvalidLattice(_))));
    assert!(matches!(Lattice::new(c(1.0, 0.0), c(0.0, -1.0), 1e-16), Err(Error::InvalidLattice(_))));
    assert!(matches!(Lattice::new(c(0.0, 0.0), c(0.0, 1.0), 1e-16), Err(Error::InvalidLattice(_))));
    assert!(matches!(Lattice::new(c(1.0, 0.0), c(0.0, 1.0), 0.5), Err(Error::InvalidLattice(_))));
}
