use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFiniteInput(f64),

    #[error("infinitesimal value has no multiplicative inverse")]
    NotInvertible,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown generator id `{0}`")]
    UnknownGenerator(String),

    #[error("length undefined: {0}")]
    LengthUndefined(String),

    #[error("set is not the monad of a subset of the reals")]
    NotMonadic,

    #[error("empty set")]
    EmptySet,

    #[error("set is unbounded")]
    Unbounded,

    #[error("extremum is not attained: {0}")]
    NotAttained(String),

    #[error("{0} is outside the function domain")]
    OutOfDomain(f64),

    #[error("not differentiable: {0}")]
    NotDifferentiable(String),

    #[error("declared derivative {declared} contradicts the classical limit {limit}")]
    ProvisoViolated { declared: f64, limit: f64 },

    #[error("function is not injective on its domain")]
    NotInjective,

    #[error("derivative vanishes on the domain")]
    VanishingDerivative,

    #[error("piecewise region structures differ")]
    RegionMismatch,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
