//! Error type shared by the whole pipeline.

use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong between ingesting a matrix and evaluating
/// its exponential. `InvalidInput` marks caller-supplied data that fails
/// validation; the remaining variants are numerical failures.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("characteristic polynomial overflow; rescale the matrix (divide by a power of two) and scale t accordingly")]
    CharPolyOverflow,

    #[error("root iteration did not converge after {sweeps} sweeps (worst residual {worst_residual:.3e})")]
    RootIterationDidNotConverge {
        sweeps: usize,
        /// Best iterate at the time the cap was hit.
        roots: Vec<Complex64>,
        /// |p(z_i)| for each entry of `roots`.
        residuals: Vec<f64>,
        worst_residual: f64,
    },

    #[error("ambiguous clustering: representatives {a} and {b} are closer than twice the tolerance {tol:.3e}; retry with a different tolerance")]
    AmbiguousClustering { a: Complex64, b: Complex64, tol: f64 },

    #[error("reciprocal at a zero of the series; an eigenvalue collided with another root (spectrum likely misclustered)")]
    ReciprocalAtZero,

    #[error("taylor jets have different centers: {a} and {b}")]
    JetCenterMismatch { a: Complex64, b: Complex64 },

    #[error("spectrum inconsistent with polynomial: {0}")]
    SpectrumInconsistent(String),

    #[error("numerator degree {numerator} is not below denominator degree {denominator}")]
    DegreeViolation { numerator: usize, denominator: usize },

    #[error("realification failed: imaginary residue {residue:.3e} exceeds {limit:.3e} (broken conjugate pairing upstream)")]
    RealificationFailed { residue: f64, limit: f64 },

    #[error("exponential overflow while evaluating at t = {t}")]
    ExponentialOverflow { t: f64 },
}

impl Error {
    /// True for errors caused by caller-supplied data rather than by the
    /// numerics. The CLI maps these to a distinct exit status.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::InvalidInput(_))
    }
}
