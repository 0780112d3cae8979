//! Seeded random instances.
//!
//! Points are drawn one at a time and a draw is rejected if it lands within
//! `sep_min` of a kernel zero relative to any point already placed (same set
//! or another set). `lambda` is drawn last and must keep every shifted
//! parameter used by the checkers at least `sep_min` away from the kernel zeros.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SuiteConfig;
use crate::cauchy::{gauss_ladder, Instance, Kernel, KernelTag, PointSet};
use crate::error::{Error, Result};

/// Total rejected draws allowed per instance.
pub const MAX_REJECTIONS: usize = 10_000;

/// Deterministic RNG for a `(kernel, n, seed)` triple.
pub fn instance_rng(kernel: KernelTag, n: usize, seed: u64) -> ChaCha8Rng {
    let tag = kernel as u64 + 1;
    let mixed = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((n as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9))
        ^ tag.rotate_left(56);
    ChaCha8Rng::seed_from_u64(mixed)
}

fn draw(kernel: &Kernel, rng: &mut ChaCha8Rng) -> Complex64 {
    match kernel {
        Kernel::Elliptic(lat) => {
            let a: f64 = rng.gen_range(-0.5..0.5);
            let b: f64 = rng.gen_range(-0.5..0.5);
            2.0 * (lat.omega() * a + lat.omega_prime() * b)
        }
        Kernel::Trigonometric => {
            Complex64::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..=0.5))
        }
        Kernel::Rational => {
            let r = rng.gen::<f64>().sqrt();
            let theta = rng.gen_range(0.0..2.0 * PI);
            Complex64::from_polar(r, theta)
        }
    }
}

/// Shifted parameters at which the checkers evaluate the kernel.
fn lambda_shifts(
    lambda: Complex64,
    x: &PointSet,
    y: &PointSet,
    z: Option<&PointSet>,
) -> Vec<Complex64> {
    let (sx, sy) = (x.sum(), y.sum());
    let mut out = vec![
        lambda,
        lambda + sx - sy,
        lambda - sx + sy,
        lambda + sx,
        lambda - sx,
        lambda + sy,
        lambda - sy,
    ];
    if let Some(z) = z {
        let sz = z.sum();
        out.extend([
            lambda + sz,
            lambda - sz,
            lambda - sx + sz,
            lambda + sx - sz,
            lambda - sy + sz,
            lambda + sy - sz,
        ]);
    }
    let ladder = gauss_ladder(x, y, lambda);
    for (j, lj) in ladder.iter().enumerate() {
        out.push(*lj);
        out.push(x[j] - y[j] + lj);
    }
    out
}

pub fn random_instance(
    cfg: &SuiteConfig,
    kernel: &Kernel,
    n: usize,
    seed: u64,
    with_z: bool,
) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidConfig("n must be at least 1".into()));
    }
    let sep = cfg.sep_min;
    let mut rng = instance_rng(kernel.tag(), n, seed);
    let mut rejections = 0usize;
    let exhausted = || Error::SamplingExhausted {
        rounds: MAX_REJECTIONS,
        n,
        sep_min: sep,
    };

    let n_sets = if with_z { 3 } else { 2 };
    let mut placed: Vec<Complex64> = Vec::with_capacity(n * n_sets);
    let mut sets: Vec<Vec<Complex64>> = Vec::with_capacity(n_sets);
    for _ in 0..n_sets {
        let mut set = Vec::with_capacity(n);
        while set.len() < n {
            let p = draw(kernel, &mut rng);
            if placed.iter().all(|&q| kernel.zero_distance(p - q) >= sep) {
                placed.push(p);
                set.push(p);
            } else {
                rejections += 1;
                if rejections >= MAX_REJECTIONS {
                    return Err(exhausted());
                }
            }
        }
        sets.push(set);
    }

    let mut sets = sets.into_iter();
    let x = PointSet::new(sets.next().unwrap())?.labelled("x");
    let y = PointSet::new(sets.next().unwrap())?.labelled("y");
    let z = sets
        .next()
        .map(|s| PointSet::new(s).map(|p| p.labelled("z")))
        .transpose()?;

    loop {
        let lambda = draw(kernel, &mut rng);
        if lambda_shifts(lambda, &x, &y, z.as_ref())
            .into_iter()
            .all(|u| kernel.zero_distance(u) >= sep)
        {
            return Instance::new(kernel.clone(), x, y, z, lambda, seed);
        }
        rejections += 1;
        if rejections >= MAX_REJECTIONS {
            return Err(exhausted());
        }
    }
}
