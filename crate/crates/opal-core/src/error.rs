use thiserror::Error;

/// Errors surfaced by the numerical kernels and verification routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A pivot fell below the singularity threshold during elimination.
    /// For resolvent callers this signals that the shift lies in the spectrum.
    #[error("matrix is numerically singular: {0}")]
    Singular(String),

    /// Input was expected to be Hermitian but the asymmetry exceeds tolerance.
    #[error("matrix is not Hermitian (asymmetry {0:.3e})")]
    NotHermitian(f64),

    /// An iteration cap was exceeded before reaching the requested tolerance.
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),

    /// Input was expected to be accretive (positive semidefinite real part).
    #[error("matrix is not accretive (min eigenvalue of x + x* is {0:.3e})")]
    NotAccretive(f64),

    /// Quadrature truncation bounds cannot reach the requested tolerance.
    #[error("quadrature truncation bounds too tight: {0}")]
    TailBoundExceeded(String),

    /// Eigenvector conditioning too poor for the spectral route.
    #[error("matrix is numerically defective (eigenvector condition {0:.3e})")]
    Defective(f64),

    /// Input was expected to satisfy the half-F contraction condition.
    #[error("element is not in 1/2 F (norm of 1 - 2x is {0:.6})")]
    NotInHalfF(f64),

    /// A stated precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// Norm bound required by the operation is exceeded.
    #[error("norm too large: {0:.6} (bound {1:.6})")]
    NormTooLarge(f64, f64),

    /// Input was expected to be an orthogonal projection.
    #[error("matrix is not an orthogonal projection: {0}")]
    NotProjection(String),

    /// Projection domination q <= u fails.
    #[error("projection is not dominated: {0}")]
    NotDominated(String),

    /// Input was expected to be idempotent.
    #[error("element is not idempotent (residual {0:.3e})")]
    NotIdempotent(f64),

    /// No approximate-identity index achieves the requested approximation
    /// at this truncation level.
    #[error("no usable approximation index at this truncation (best relative error {0:.3e})")]
    NoSuchK(f64),

    /// Scaled magnitudes left the representable floating-point range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Parameter outside the mathematical domain of the formula.
    #[error("domain error: {0}")]
    DomainError(String),

    /// Input file could not be parsed.
    #[error("parse error: {0}")]
    ParseError(String),

    /// Invalid run configuration.
    #[error("config error: {0}")]
    ConfigError(String),

    /// Underlying I/O failure.
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
