use thiserror::Error;

/// Errors raised by the constructions in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the domain where the construction is defined.
    #[error("{0}")]
    InvalidParameter(String),

    /// A denominator in a closed-form coefficient vanished.
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    /// Polynomial degree beyond the double-precision cap.
    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    /// An operation that is only defined in the plane was called with another dimension.
    #[error("operation requires m = 2, got m = {0}")]
    UnsupportedDimension(u32),

    #[error("eigensolver failed to converge: {0}")]
    NonConvergence(String),

    /// The truncated matrix had to grow beyond the hard cap before the
    /// tail coefficients became negligible.
    #[error("truncation cap {cap} exceeded; tail {tail:e} still above tolerance {tol:e} (need size > {cap})")]
    TruncationCapExceeded { cap: usize, tail: f64, tol: f64 },
}

impl Error {
    /// Whether this is a usage problem (bad input) rather than a numerical failure.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_) | Error::UnsupportedDimension(_) | Error::DegreeTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > -1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter("alpha must exceed -1".into()))
    }
}

pub(crate) fn check_dimension(m: u32) -> Result<()> {
    if m >= 2 {
        Ok(())
    } else {
        Err(Error::InvalidParameter("m must be at least 2".into()))
    }
}
