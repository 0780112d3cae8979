//! Residual-reporting checkers for every identity over seeded random instances.

mod checks;
mod report;
mod sampler;

use std::time::Instant;

use num_complex::Complex64;

use crate::cauchy::{Instance, Kernel, KernelTag};
use crate::error::{Error, Result};
use crate::weierstrass::Lattice;

pub use checks::{
    check_degeneration, check_determinant, check_factorization, check_gauss, check_inverse,
    check_k_product, check_monodromy, check_product_identity, check_transposed_identity,
    check_w_factorization, rational_limit_residual, trig_scaling_residual, DEGENERATION_N,
    GAUGE_TOL, STRUCTURE_TOL,
};
pub use report::{summarize, Identity, Report, SummaryRow};
pub use sampler::{instance_rng, random_instance, MAX_REJECTIONS};

/// Series truncation used for the suite's lattice.
pub const SUITE_SERIES_TOL: f64 = 1e-16;

/// Parameters of a verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub n_values: Vec<usize>,
    pub trials_per_n: usize,
    pub base_seed: u64,
    /// Overrides the per-identity tolerance ladder when set.
    pub tolerance: Option<f64>,
    /// `omega' / omega` with `omega = 1`.
    pub lattice_tau: Complex64,
    pub sep_min: f64,
    /// Record wall-clock time per check. Off by default so that reports are
    /// byte-identical across runs.
    pub record_timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n_values: (1..=8).collect(),
            trials_per_n: 10,
            base_seed: 42,
            tolerance: None,
            lattice_tau: Complex64::new(0.3, 0.7),
            sep_min: 0.05,
            record_timing: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() || self.n_values.contains(&0) {
            return Err(Error::InvalidConfig(
                "n_values must be nonempty with every n >= 1".into(),
            ));
        }
        if self.trials_per_n == 0 {
            return Err(Error::InvalidConfig("trials_per_n must be at least 1".into()));
        }
        if !(self.lattice_tau.im > 0.0) {
            return Err(Error::InvalidConfig("Im(lattice_tau) must be positive".into()));
        }
        if !(self.sep_min > 0.0) {
            return Err(Error::InvalidConfig("sep_min must be positive".into()));
        }
        if let Some(t) = self.tolerance {
            if !(t >= 0.0) {
                return Err(Error::InvalidConfig("tolerance must be non-negative".into()));
            }
        }
        Ok(())
    }

    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::from_tau(self.lattice_tau, SUITE_SERIES_TOL)
    }

    pub fn tolerance_for(&self, identity: Identity, n: usize) -> f64 {
        self.tolerance.unwrap_or_else(|| identity.default_tolerance(n))
    }
}

/// Restricts a run to some identities and kernels; `None` means all.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Selection {
    pub identities: Option<Vec<Identity>>,
    pub kernels: Option<Vec<KernelTag>>,
}

impl Selection {
    fn wants(&self, identity: Identity, kernel: KernelTag) -> bool {
        let kernel_family = match kernel {
            KernelTag::RationalLimit => KernelTag::Rational,
            k => k,
        };
        self.identities.as_ref().is_none_or(|ids| ids.contains(&identity))
            && self
                .kernels
                .as_ref()
                .is_none_or(|ks| ks.contains(&kernel) || ks.contains(&kernel_family))
    }
}

type Checker = fn(&Instance) -> Result<Report>;

/// Checks run per kernel; the tag overrides the kernel's own for the large-lambda forms.
fn plan(kernel: KernelTag) -> Vec<(Identity, KernelTag, Checker)> {
    use Identity::*;
    match kernel {
        KernelTag::Elliptic => vec![
            (Determinant, kernel, check_determinant as Checker),
            (Inverse, kernel, check_inverse),
            (Product, kernel, check_product_identity),
            (Transposed, kernel, check_transposed_identity),
            (Factorization, kernel, check_factorization),
            (Gauss, kernel, check_gauss),
            (Monodromy, kernel, check_monodromy),
        ],
        KernelTag::Trigonometric => vec![
            (Product, kernel, check_product_identity as Checker),
            (Factorization, kernel, check_factorization),
        ],
        KernelTag::Rational => vec![
            (Determinant, kernel, check_determinant as Checker),
            (Inverse, kernel, check_inverse),
            (Product, kernel, check_product_identity),
            (Factorization, kernel, check_factorization),
            (Product, KernelTag::RationalLimit, check_k_product),
            (Factorization, KernelTag::RationalLimit, check_w_factorization),
        ],
        KernelTag::RationalLimit => Vec::new(),
    }
}

fn timed(cfg: &SuiteConfig, f: impl FnOnce() -> Result<Report>) -> Result<Report> {
    let start = Instant::now();
    let r = f()?;
    Ok(if cfg.record_timing {
        r.with_elapsed(start.elapsed().as_secs_f64() * 1e3)
    } else {
        r
    })
}

/// Runs every selected checker over `n_values x trials_per_n` with seeds
/// `base_seed + t`, plus the degeneration check once. Individual failures,
/// including instances that cannot be sampled or evaluated, become failed
/// reports instead of aborting the run. Output is in canonical order.
pub fn run_selected(cfg: &SuiteConfig, selection: &Selection) -> Result<Vec<Report>> {
    cfg.validate()?;
    let lattice = cfg.lattice()?;
    let kernels = [
        Kernel::Elliptic(lattice),
        Kernel::Trigonometric,
        Kernel::Rational,
    ];
    let mut reports = Vec::new();

    for kernel in &kernels {
        let plan: Vec<_> = plan(kernel.tag())
            .into_iter()
            .filter(|(id, tag, _)| selection.wants(*id, *tag))
            .collect();
        if plan.is_empty() {
            continue;
        }
        for &n in &cfg.n_values {
            for t in 0..cfg.trials_per_n {
                let seed = cfg.base_seed.wrapping_add(t as u64);
                let inst = random_instance(cfg, kernel, n, seed, true);
                for (identity, tag, check) in &plan {
                    let tol = cfg.tolerance_for(*identity, n);
                    let report = match &inst {
                        Ok(inst) => match timed(cfg, || check(inst)) {
                            Ok(r) => {
                                let r = r.with_tolerance(tol);
                                if r.passed {
                                    r
                                } else {
                                    r.with_dump(inst.dump())
                                }
                            }
                            Err(e) => Report::errored(
                                *identity,
                                *tag,
                                n,
                                seed,
                                format!("{e}; {}", inst.dump()),
                            ),
                        },
                        Err(e) => Report::errored(*identity, *tag, n, seed, e.to_string()),
                    };
                    reports.push(report);
                }
            }
        }
    }

    if selection.wants(Identity::Degeneration, KernelTag::Rational) {
        let tol = cfg.tolerance_for(Identity::Degeneration, DEGENERATION_N);
        reports.push(match timed(cfg, || check_degeneration(cfg)) {
            Ok(r) => r.with_tolerance(tol),
            Err(e) => Report::errored(
                Identity::Degeneration,
                KernelTag::Rational,
                DEGENERATION_N,
                cfg.base_seed,
                e.to_string(),
            ),
        });
    }

    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(reports)
}

/// [`run_selected`] with everything selected.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    run_selected(cfg, &Selection::default())
}

pub fn all_passed(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.passed)
}
