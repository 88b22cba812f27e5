use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("beta = {beta} is outside the admissible range |beta| <= (e+1)/(e-1)")]
    BetaOutOfRange { beta: f64 },

    #[error("b = {b} is outside the supported range {range}")]
    BOutOfRange { b: f64, range: &'static str },

    #[error("Legendre degree is singular at b = {b} (requires b < 3)")]
    DegreeSingular { b: f64 },

    #[error("argument z = {z} is outside the supported range z >= 1")]
    ArgumentOutOfRange { z: f64 },

    #[error("grid of {n} points is too small (need at least {min})")]
    GridTooSmall { n: usize, min: usize },

    #[error("grid size {n} is not a power of two")]
    GridNotPowerOfTwo { n: usize },

    #[error("hypergeometric series did not converge within {terms} terms")]
    NoConvergence { terms: usize },

    #[error("division by a near-zero value ({value:e})")]
    DivisionNearZero { value: f64 },

    #[error("quadratic has no real root (discriminant {discriminant:e})")]
    NoRealRoot { discriminant: f64 },

    #[error("tridiagonal system is numerically singular at row {row}")]
    LinearSolveFailure { row: usize },

    #[error("assembled quadratic form is not positive definite (pivot {pivot:e} at row {row})")]
    NotCoercive { row: usize, pivot: f64 },

    #[error("trigonometric polynomial has {modes} modes (at most {max} supported)")]
    TooManyModes { modes: usize, max: usize },

    #[error("initial data is not smooth: spectral tail fraction {tail:e} exceeds {limit:e}")]
    RoughInitialData { tail: f64, limit: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
