use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |A - A*| = {deviation:e} exceeds {allowed:e}")]
    NotHermitian { deviation: f64, allowed: f64 },

    #[error("{routine} did not converge within {iterations} iterations")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
    },

    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("symbol carries neither Fourier coefficients nor an evaluator")]
    MissingCoefficients,

    #[error("symbol is not a trigonometric polynomial, circulant eigenvalues of size {n} are not samples of it")]
    DegreeTooHigh { n: usize },

    #[error("quadrature under-resolved: coefficients still moved by {change:e} at {points} points")]
    QuadratureUnderResolved { change: f64, points: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("symbol depends on x but no x was supplied")]
    MissingVariable,

    #[error("incompatible symbol domains: {0}")]
    IncompatibleDomains(String),

    #[error("(eps, phi) = ({eps}, {phi}) has no tabulated tau grid")]
    UnsupportedAlgebra { eps: f64, phi: f64 },

    #[error("closed-form singular values need N_t = 2, got N_t = {0}")]
    WrongNt(usize),

    #[error("invalid GLT case {0}, expected 1, 2 or 3")]
    InvalidCase(u8),

    #[error("two-norm bounds need an even N_x, got {0}")]
    OddNx(usize),

    #[error("fractional order {0} outside (1, 2]")]
    OrderOutOfRange(f64),

    #[error("grid sizes {0:?} are not nested as n_k = 2^(k-1) n_1")]
    GridNotNested(Vec<usize>),

    #[error("theta = {0} lies outside (0, pi]")]
    ExtrapolationOutOfRange(f64),

    #[error("symbol must be real, even and nondecreasing on [0, pi]")]
    NotMonotone,

    #[error("scaling sequence diverges: leading order {0} is negative")]
    DivergentScaling(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
