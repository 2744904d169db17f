use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Rank decisions need a clear gap between the kept and the discarded
    /// singular values.
    #[error(
        "ambiguous numerical rank: smallest kept singular value {smallest_kept:e}, \
         largest discarded {largest_dropped:e} (gap {gap:e})"
    )]
    NumericalTolerance {
        smallest_kept: f64,
        largest_dropped: f64,
        gap: f64,
    },

    #[error("outside the domain of the potential: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("near-singular (s,t) conversion at s={s}, t={t}")]
    NearSingular { s: f64, t: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("tangent vector has no generator")]
    MissingGenerator,

    #[error("not nilpotent: {0}")]
    NotNilpotent(String),

    #[error("finite-difference step underflow: {0:e}")]
    StepUnderflow(f64),

    #[error("singular Gram matrix")]
    SingularGram,

    #[error("cannot write output: {0}")]
    Output(String),

    #[error("{0} did not converge")]
    NoConvergence(&'static str),
}
