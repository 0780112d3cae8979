use thiserror::Error;

/// Errors raised by the elliptic Cauchy library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("argument {0} is a lattice point (pole of zeta)")]
    PoleAtLatticePoint(String),

    #[error("kernel function vanishes at {what} (argument {arg})")]
    KernelZero { what: &'static str, arg: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is singular: pivot {pivot:e} below threshold {threshold:e} at step {step}")]
    SingularMatrix {
        step: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("g-factor of the second point set is singular")]
    SingularGFactor,

    #[error("evaluation point {0} lies on a pole")]
    PoleProximity(String),

    #[error("invalid point set: {0}")]
    InvalidPointSet(String),

    #[error("instance sampling exhausted after {rounds} rejection rounds (n = {n}, sep_min = {sep_min})")]
    SamplingExhausted { rounds: usize, n: usize, sep_min: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unsupported kernel for {0}")]
    UnsupportedKernel(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
