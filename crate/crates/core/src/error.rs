use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("schedule is not non-increasing: sigma[{index}] = {next} exceeds previous {prev}")]
    ScheduleNotMonotone { index: usize, prev: f64, next: f64 },

    #[error("sigma * alpha = {product} does not exceed dim = {dim}; no finite n*")]
    NoFiniteNStar { product: f64, dim: f64 },

    #[error("logarithmic case d + mu = 0 (mu = {mu}); perturb sigma to avoid it")]
    LogarithmicCase { mu: f64 },

    #[error("tau-polynomial exceeds {cap} monomials")]
    TooManyMonomials { cap: usize },

    #[error("bound has no power-law terms")]
    NoPowerLawTerms,

    #[error("quadrature failed to converge on [{a}, {b}] (error estimate {estimate:e})")]
    QuadratureFailed { a: f64, b: f64, estimate: f64 },

    #[error("integral vanishes while the lattice sum is {sum}")]
    ZeroIntegral { sum: f64 },

    #[error("Hilbert space dimension 2^{sites} exceeds the 2^{max} cap")]
    HilbertTooLarge { sites: usize, max: usize },

    #[error("site index {index} out of range for a lattice of {n_sites} sites")]
    SiteOutOfRange { index: usize, n_sites: usize },

    #[error("lattices differ")]
    LatticeMismatch,

    #[error("eigendecomposition failed: {0}")]
    Decomposition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
