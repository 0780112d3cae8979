//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Built with `harness = false` so the lines show up under a plain `cargo test`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use elliptic_cauchy::cauchy::{
    bloch_eval, bloch_transport, cauchy_inverse_closed, cauchy_matrix, classic_cauchy,
    classic_cauchy_inverse, frobenius_det, gauss_udl, lagrange_power_sum, Instance, Kernel,
    KernelTag,
};
use elliptic_cauchy::linalg::{lu_det, mat_mul, mat_sub, rel_residual, structure_check, CMatrix, Structure};
use elliptic_cauchy::verify::{
    check_degeneration, random_instance, run_selected, Identity, Report, Selection, SuiteConfig,
};
use elliptic_cauchy::weierstrass::Lattice;
use elliptic_cauchy::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn within(elapsed: Duration, limit_s: f64, detail: String) -> Outcome {
    let secs = elapsed.as_secs_f64();
    if secs < limit_s {
        Ok(format!("{detail}; {secs:.2}s < {limit_s}s"))
    } else {
        Err(format!("{detail}; took {secs:.2}s, limit {limit_s}s"))
    }
}

/// Instances of the default grid: N = 1..=8, seeds 42..52.
fn grid(kernel: &Kernel, sizes: std::ops::RangeInclusive<usize>) -> Vec<Instance> {
    let cfg = SuiteConfig::default();
    sizes
        .flat_map(|n| (0..cfg.trials_per_n as u64).map(move |t| (n, cfg.base_seed + t)))
        .map(|(n, seed)| random_instance(&cfg, kernel, n, seed, true).expect("sampling"))
        .collect()
}

fn selected(identity: Identity, n_values: Vec<usize>) -> Vec<Report> {
    let cfg = SuiteConfig { n_values, ..SuiteConfig::default() };
    let sel = Selection { identities: Some(vec![identity]), kernels: None };
    run_selected(&cfg, &sel).expect("valid config")
}

fn worst(reports: &[Report], f: impl Fn(&Report) -> f64) -> f64 {
    reports.iter().map(f).fold(0.0, |a, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}

/// A named metric; errored reports carry none and count as NaN.
fn metric(r: &Report, key: &str) -> f64 {
    r.metrics.get(key).copied().unwrap_or(f64::NAN)
}

fn test_lattices() -> Vec<Lattice> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..10)
        .map(|_| {
            let tau = c(rng.gen_range(-1.0..1.0), rng.gen_range(0.3..3.0));
            let omega = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0));
            Lattice::new(omega, omega * tau, 1e-16).expect("lattice")
        })
        .collect()
}

fn legendre() -> Outcome {
    let start = Instant::now();
    let lats = test_lattices();
    let w = lats.iter().map(|l| l.legendre_residual()).fold(0.0, f64::max);
    let detail = format!("max |2 eta omega' - 2 eta' omega - i pi| = {w:.1e} over 10 lattices");
    if w >= 1e-12 {
        return Err(detail);
    }
    within(start.elapsed(), 1.0, detail)
}

fn monodromy() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut w_sigma: f64 = 0.0;
    let mut w_k: f64 = 0.0;
    let lats = test_lattices();
    for lat in lats.iter().take(4) {
        let (om, omp) = (lat.omega(), lat.omega_prime());
        for _ in 0..50 {
            let a: f64 = rng.gen_range(-0.5..0.5);
            let b: f64 = rng.gen_range(-0.5..0.5);
            let x = 2.0 * (om * a + omp * b);
            let s = lat.sigma(x);
            w_sigma = w_sigma
                .max(rel(lat.sigma(x + 2.0 * om), -(2.0 * lat.eta() * (x + om)).exp() * s))
                .max(rel(lat.sigma(x + 2.0 * omp), -(2.0 * lat.eta_prime() * (x + omp)).exp() * s));
            for n in 1..=6usize {
                let nf = n as f64;
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                for k in 1..=n {
                    let sk = lat.sigma_k(n, k, x);
                    let along = sign * (2.0 * lat.eta() * nf * (x + om)).exp() * sk;
                    let across = sign * (2.0 * lat.eta_prime() * nf * (x + omp)).exp() * sk;
                    w_k = w_k
                        .max(rel(lat.sigma_k(n, k, x + 2.0 * om), along))
                        .max(rel(lat.sigma_k(n, k, x + 2.0 * omp), across));
                }
            }
        }
    }
    let detail = format!("sigma {w_sigma:.1e}, sigma^(k) {w_k:.1e} (4 lattices x 50 points, N <= 6)");
    if w_sigma >= 1e-10 || w_k >= 1e-10 {
        return Err(detail);
    }
    within(start.elapsed(), 2.0, detail)
}

fn determinant() -> Outcome {
    let start = Instant::now();
    let lat = SuiteConfig::default().lattice().unwrap();
    let mut w: f64 = 0.0;
    let instances = grid(&Kernel::Elliptic(lat), 1..=8);
    for inst in &instances {
        let closed = frobenius_det(inst).map_err(|e| e.to_string())?;
        let by_lu = lu_det(&cauchy_matrix(inst).map_err(|e| e.to_string())?);
        w = w.max(rel(by_lu, closed));
    }
    let detail = format!("max |lu_det - closed|/|closed| = {w:.1e} over {} instances", instances.len());
    if w >= 1e-9 {
        return Err(detail);
    }
    within(start.elapsed(), 5.0, detail)
}

fn inverse() -> Outcome {
    let start = Instant::now();
    let lat = SuiteConfig::default().lattice().unwrap();
    let gap = |c: &CMatrix, inv: &CMatrix| {
        let id = CMatrix::identity(c.n());
        mat_sub(&mat_mul(c, inv).unwrap(), &id).unwrap().norm_inf()
    };
    let mut w_ell: f64 = 0.0;
    for inst in grid(&Kernel::Elliptic(lat), 1..=8) {
        let cm = cauchy_matrix(&inst).map_err(|e| e.to_string())?;
        w_ell = w_ell.max(gap(&cm, &cauchy_inverse_closed(&inst).map_err(|e| e.to_string())?));
    }
    let mut w_rat: f64 = 0.0;
    for inst in grid(&Kernel::Rational, 1..=8) {
        let cm = classic_cauchy(inst.x(), inst.y()).map_err(|e| e.to_string())?;
        w_rat = w_rat.max(gap(&cm, &classic_cauchy_inverse(inst.x(), inst.y()).map_err(|e| e.to_string())?));
    }
    let detail = format!("||C C^-1 - I||_inf: elliptic {w_ell:.1e}, classic {w_rat:.1e}");
    if w_ell >= 1e-8 || w_rat >= 1e-8 {
        return Err(detail);
    }
    within(start.elapsed(), 5.0, detail)
}

fn product() -> Outcome {
    let start = Instant::now();
    let reports = selected(Identity::Product, (1..=8).collect());
    let mut parts = Vec::new();
    for tag in [KernelTag::Elliptic, KernelTag::Trigonometric, KernelTag::Rational, KernelTag::RationalLimit] {
        let of_tag: Vec<Report> = reports.iter().filter(|r| r.kernel == tag).cloned().collect();
        if of_tag.len() != 80 {
            return Err(format!("{tag}: {} reports, expected 80", of_tag.len()));
        }
        let w = worst(&of_tag, |r| r.rel_residual);
        if !(w < 1e-8) {
            return Err(format!("{tag}: worst relative residual {w:.1e}"));
        }
        parts.push(format!("{tag} {w:.1e}"));
    }
    within(start.elapsed(), 10.0, parts.join(", "))
}

fn transposed() -> Outcome {
    let reports = selected(Identity::Transposed, (1..=8).collect());
    let w = worst(&reports, |r| metric(r, "signed_identity_rel"));
    let t = worst(&reports, |r| metric(r, "transpose_consistency_rel"));
    let detail = format!("signed identity {w:.1e}, H/G transpose {t:.1e} over {} instances", reports.len());
    if reports.len() == 80 && w < 1e-8 && t < 1e-8 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn factorization() -> Outcome {
    let reports = selected(Identity::Factorization, (1..=6).collect());
    let mut parts = Vec::new();
    for tag in [KernelTag::Elliptic, KernelTag::Trigonometric, KernelTag::Rational, KernelTag::RationalLimit] {
        let of_tag: Vec<Report> = reports.iter().filter(|r| r.kernel == tag).cloned().collect();
        let w = worst(&of_tag, |r| r.rel_residual);
        let g = worst(&of_tag, |r| metric(r, "gauge_delta"));
        if of_tag.len() != 60 || !(w < 1e-8) || !(g < 1e-10) {
            return Err(format!("{tag}: {} reports, residual {w:.1e}, gauge delta {g:.1e}", of_tag.len()));
        }
        parts.push(format!("{tag} {w:.1e} (gauge {g:.0e})"));
    }
    Ok(parts.join(", "))
}

fn gauss() -> Outcome {
    let lat = SuiteConfig::default().lattice().unwrap();
    let (mut w_udl, mut w_det): (f64, f64) = (0.0, 0.0);
    for inst in grid(&Kernel::Elliptic(lat.clone()), 1..=8) {
        let udl = gauss_udl(&lat, inst.x(), inst.y(), inst.lambda()).map_err(|e| e.to_string())?;
        if !(structure_check(&udl.upper, Structure::UnitUpper, 1e-12)
            && structure_check(&udl.diag, Structure::Diagonal, 1e-12)
            && structure_check(&udl.lower, Structure::UnitLower, 1e-12))
        {
            return Err(format!("structure check failed at n={} seed={}", inst.n(), inst.seed()));
        }
        let product = mat_mul(&udl.upper, &mat_mul(&udl.diag, &udl.lower).unwrap()).unwrap();
        w_udl = w_udl.max(rel_residual(&product, &cauchy_matrix(&inst).unwrap()).unwrap());
        let det_d: Complex64 = udl.diag.diag().iter().product();
        w_det = w_det.max(rel(det_d, frobenius_det(&inst).unwrap()));
    }
    let detail = format!("|UDL - C|/|C| {w_udl:.1e}, prod D vs det {w_det:.1e}, structure at 1e-12");
    if w_udl < 1e-8 && w_det < 1e-8 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn degeneration() -> Outcome {
    let r = check_degeneration(&SuiteConfig::default()).map_err(|e| e.to_string())?;
    let m = &r.metrics;
    let (a6, sa, sb) = (m["rational_lambda_1e6"], m["rational_shrink"], m["trig_shrink"]);
    let detail = format!("G vs K at 1e6: {a6:.1e}, shrink to 1e7: {sa:.1}x, trig shrink 1e-4 to 1e-5: {sb:.1}x");
    if a6 < 1e-4 && (5.0..=20.0).contains(&sa) && (50.0..=200.0).contains(&sb) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn double_bloch() -> Outcome {
    let lat = SuiteConfig::default().lattice().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut w_mult, mut w_tr): (f64, f64) = (0.0, 0.0);
    for inst in grid(&Kernel::Elliptic(lat.clone()), 1..=6) {
        let (x, y, lam) = (inst.x(), inst.y(), inst.lambda());
        let coeffs: Vec<Complex64> = (0..inst.n()).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let b = bloch_transport(&lat, x, y, lam, &coeffs).map_err(|e| e.to_string())?;
        let moved = lam - x.sum() + y.sum();
        for _ in 0..3 {
            let w = c(rng.gen_range(-1.0..1.0), rng.gen_range(-0.7..0.7));
            let psi = bloch_eval(&lat, x, &coeffs, lam, w).map_err(|e| e.to_string())?;
            for (t, eta) in [(lat.period(1, 0), lat.eta()), (lat.period(0, 1), lat.eta_prime())] {
                let shifted = bloch_eval(&lat, x, &coeffs, lam, w + t).map_err(|e| e.to_string())?;
                w_mult = w_mult.max(rel(shifted, (2.0 * eta * lam).exp() * psi));
            }
            let factor: Complex64 =
                x.iter().zip(y.iter()).map(|(&xi, &yi)| lat.sigma(w - xi) / lat.sigma(w - yi)).product();
            let rhs = bloch_eval(&lat, y, &b, moved, w).map_err(|e| e.to_string())?;
            w_tr = w_tr.max(rel(psi * factor, rhs));
        }
    }
    let detail = format!("multipliers {w_mult:.1e}, transport {w_tr:.1e}");
    if w_mult < 1e-9 && w_tr < 1e-8 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn lagrange() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut w: f64 = 0.0;
    for n in 1..=8usize {
        for _ in 0..10 {
            let pts: Vec<Complex64> = loop {
                let p: Vec<Complex64> =
                    (0..n).map(|_| Complex64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..std::f64::consts::TAU))).collect();
                if (0..n).all(|a| (0..a).all(|b| (p[a] - p[b]).norm() > 0.2)) {
                    break p;
                }
            };
            let zero = c(0.0, 0.0);
            let sum: Complex64 = pts.iter().sum();
            let prod: Complex64 = pts.iter().product();
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            let mut expected: Vec<(i32, Complex64)> = (0..n as i32 - 1).map(|k| (k, zero)).collect();
            expected.push((n as i32 - 1, c(1.0, 0.0)));
            expected.push((n as i32, sum));
            expected.push((-1, sign / prod));
            for (k, want) in expected {
                w = w.max((lagrange_power_sum(&pts, k) - want).norm());
            }
        }
    }
    let detail = format!("max deviation {w:.1e} for N <= 8");
    if w < 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn cli_verify_all() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    let mut slowest: f64 = 0.0;
    for name in ["a.json", "b.json"] {
        let path = dir.path().join(name);
        let start = Instant::now();
        let status = Command::new(env!("CARGO_BIN_EXE_elliptic-cauchy"))
            .args(["verify-all", "--format", "json", "--out"])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        slowest = slowest.max(start.elapsed().as_secs_f64());
        if status.code() != Some(0) {
            return Err(format!("verify-all exited with {status}"));
        }
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    if outputs[0] != outputs[1] {
        return Err("JSON reports differ between runs".into());
    }
    let reports: Vec<Report> = serde_json::from_slice(&outputs[0]).map_err(|e| e.to_string())?;
    let detail = format!("exit 0, {} reports, byte-identical JSON", reports.len());
    within(Duration::from_secs_f64(slowest), 60.0, detail)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("Legendre relation", legendre),
        ("sigma and sigma^(k) quasi-periodicity", monodromy),
        ("determinant closed form", determinant),
        ("closed inverse and classic inverse", inverse),
        ("product identity, all kernels", product),
        ("transposed identity with sign", transposed),
        ("factorization and gauge freedom", factorization),
        ("Gauss UDL decomposition", gauss),
        ("degeneration limits", degeneration),
        ("double-Bloch multipliers and transport", double_bloch),
        ("Lagrange power sums", lagrange),
        ("verify-all CLI run", cli_verify_all),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
