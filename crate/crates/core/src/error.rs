use thiserror::Error;

/// Errors raised by the node-system machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value {0} cannot be placed on the torus")]
    NonFinite(f64),

    #[error("nodes are not in cyclic order")]
    Unordered,

    #[error("kernel `{0}` is not periodic and cannot be evaluated on the torus")]
    NonPeriodicKernel(String),

    #[error("smoothing parameter must be positive, got {0}")]
    InvalidEta(f64),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("expected 0 <= alpha < a < b < beta <= 1, got ({alpha}, {a}, {b}, {beta})")]
    WideningOrder { alpha: f64, a: f64, b: f64, beta: f64 },

    #[error("widening balance mu = {0} differs from 1")]
    UnbalancedWidening(f64),

    #[error("partition is trivial or does not cover the {0} arc indices")]
    TrivialPartition(usize),

    #[error("partition is not alternating")]
    NonAlternating,

    #[error("shrinking arc {0} is degenerate")]
    DegenerateShrinkArc(usize),

    #[error("perturbation step {h} outside the admissible range (0, {bound})")]
    StepOutOfRange { h: f64, bound: f64 },

    #[error("arc {0} has maximum -inf: node system is outside the admissible set")]
    InfiniteArcMaximum(usize),

    #[error("equioscillation solve did not converge after {iterations} iterations (residual {residual:e})")]
    Divergence { iterations: usize, residual: f64 },

    #[error("{0} is outside the equioscillation parameter range")]
    Domain(f64),

    #[error("grid of {cells} cells exceeds the configured cap of {cap}")]
    ResourceGuard { cells: u128, cap: u128 },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
