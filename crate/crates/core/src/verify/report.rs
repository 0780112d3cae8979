use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize};

use crate::cauchy::KernelTag;
use crate::linalg::relative_to;

/// The identities the suite can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Determinant,
    Inverse,
    Product,
    Transposed,
    Factorization,
    Gauss,
    Monodromy,
    Degeneration,
}

impl Identity {
    /// Identities selectable by name from the command line.
    pub const CHECKABLE: [Identity; 7] = [
        Identity::Determinant,
        Identity::Inverse,
        Identity::Product,
        Identity::Transposed,
        Identity::Factorization,
        Identity::Gauss,
        Identity::Monodromy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Identity::Determinant => "determinant",
            Identity::Inverse => "inverse",
            Identity::Product => "product",
            Identity::Transposed => "transposed",
            Identity::Factorization => "factorization",
            Identity::Gauss => "gauss",
            Identity::Monodromy => "monodromy",
            Identity::Degeneration => "degeneration",
        }
    }

    /// Default tolerance: 1e-12 for scalar (N = 1) instances, 1e-9 for the
    /// determinant and monodromy checks, 1e-8 for matrix identities and 1e-4 for
    /// the degeneration limits.
    pub fn default_tolerance(self, n: usize) -> f64 {
        match self {
            Identity::Degeneration => 1e-4,
            _ if n == 1 => 1e-12,
            Identity::Determinant | Identity::Monodromy => 1e-9,
            _ => 1e-8,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Identity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::CHECKABLE
            .into_iter()
            .chain([Identity::Degeneration])
            .find(|id| id.as_str() == s)
            .ok_or_else(|| format!("unknown identity '{s}'"))
    }
}

fn nullable_f64<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

fn yes() -> bool {
    true
}

/// Outcome of one identity check on one instance.
///
/// `passed` is `rel_residual <= tolerance`, where `rel_residual` falls back to
/// the absolute residual when the reference magnitude is below 1e-10. A few
/// checks carry extra pass conditions (structure of the Gauss factors, gauge
/// invariance, convergence rates); their values are listed in `metrics`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub identity_name: Identity,
    pub kernel: KernelTag,
    pub n: usize,
    pub seed: u64,
    #[serde(deserialize_with = "nullable_f64")]
    pub abs_residual: f64,
    #[serde(deserialize_with = "nullable_f64")]
    pub rel_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub elapsed_ms: f64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, f64>,
    /// Instance dump or error message, present only on failure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    #[serde(skip, default = "yes")]
    side_ok: bool,
}

impl Report {
    pub fn new(
        identity: Identity,
        kernel: KernelTag,
        n: usize,
        seed: u64,
        abs_residual: f64,
        reference: f64,
    ) -> Self {
        let rel_residual = relative_to(abs_residual, reference);
        let tolerance = identity.default_tolerance(n);
        Self {
            identity_name: identity,
            kernel,
            n,
            seed,
            abs_residual,
            rel_residual,
            tolerance,
            passed: rel_residual <= tolerance,
            elapsed_ms: 0.0,
            metrics: BTreeMap::new(),
            instance: None,
            side_ok: true,
        }
    }

    /// A report for a check that could not be evaluated at all.
    pub fn errored(
        identity: Identity,
        kernel: KernelTag,
        n: usize,
        seed: u64,
        message: String,
    ) -> Self {
        let mut r = Self::new(identity, kernel, n, seed, f64::NAN, 1.0);
        r.passed = false;
        r.side_ok = false;
        r.instance = Some(message);
        r
    }

    pub fn with_metric(mut self, key: &str, value: f64) -> Self {
        self.metrics.insert(key.to_string(), value);
        self
    }

    /// Adds a pass condition beyond the residual bound.
    pub fn require(mut self, condition: bool) -> Self {
        self.side_ok &= condition;
        self.passed &= condition;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.passed = self.side_ok && self.rel_residual <= tolerance;
        self
    }

    pub fn with_elapsed(mut self, ms: f64) -> Self {
        self.elapsed_ms = ms;
        self
    }

    pub fn with_dump(mut self, dump: String) -> Self {
        self.instance = Some(dump);
        self
    }

    /// Canonical ordering key: identity, kernel, n, seed.
    pub fn sort_key(&self) -> (&'static str, &'static str, usize, u64) {
        (
            self.identity_name.as_str(),
            self.kernel.as_str(),
            self.n,
            self.seed,
        )
    }
}

/// Worst case over the seeds of one (identity, kernel, n) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub identity_name: Identity,
    pub kernel: KernelTag,
    pub n: usize,
    pub trials: usize,
    pub passed: usize,
    pub worst_rel_residual: f64,
    pub tolerance: f64,
}

/// Groups reports by (identity, kernel, n). Expects canonical ordering.
pub fn summarize(reports: &[Report]) -> Vec<SummaryRow> {
    let mut rows: Vec<SummaryRow> = Vec::new();
    for r in reports {
        match rows.last_mut() {
            Some(row)
                if row.identity_name == r.identity_name && row.kernel == r.kernel && row.n == r.n =>
            {
                row.trials += 1;
                row.passed += r.passed as usize;
                // NaN (errored) dominates
                if r.rel_residual.is_nan() || r.rel_residual > row.worst_rel_residual {
                    row.worst_rel_residual = r.rel_residual;
                }
                row.tolerance = row.tolerance.max(r.tolerance);
            }
            _ => rows.push(SummaryRow {
                identity_name: r.identity_name,
                kernel: r.kernel,
                n: r.n,
                trials: 1,
                passed: r.passed as usize,
                worst_rel_residual: r.rel_residual,
                tolerance: r.tolerance,
            }),
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_follows_tolerance() {
        let r = Report::new(Identity::Product, KernelTag::Elliptic, 4, 1, 1e-9, 1.0);
        assert!(r.passed);
        assert_eq!(r.tolerance, 1e-8);
        let r = r.with_tolerance(1e-10);
        assert!(!r.passed);
        let r = r.with_tolerance(1e-8).require(false);
        assert!(!r.passed);
        assert!(!r.with_tolerance(1.0).passed);
    }

    #[test]
    fn small_reference_uses_absolute() {
        let r = Report::new(Identity::Determinant, KernelTag::Elliptic, 3, 1, 1e-13, 1e-12);
        assert_eq!(r.rel_residual, 1e-13);
    }

    #[test]
    fn ladder() {
        assert_eq!(Identity::Gauss.default_tolerance(1), 1e-12);
        assert_eq!(Identity::Determinant.default_tolerance(5), 1e-9);
        assert_eq!(Identity::Inverse.default_tolerance(5), 1e-8);
    }

    #[test]
    fn identity_names_round_trip() {
        for id in Identity::CHECKABLE {
            assert_eq!(id.as_str().parse::<Identity>().unwrap(), id);
        }
        assert!("bogus".parse::<Identity>().is_err());
    }

    #[test]
    fn errored_report_json() {
        let r = Report::errored(Identity::Gauss, KernelTag::Elliptic, 2, 3, "boom".into());
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"rel_residual\":null"));
        let back: Report = serde_json::from_str(&s).unwrap();
        assert!(back.rel_residual.is_nan());
        assert!(!back.passed);
    }
}
