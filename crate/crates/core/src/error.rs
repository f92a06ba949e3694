use thiserror::Error;

/// Errors raised while validating inputs or evaluating functionals.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A body or measure description is malformed or violates an invariant.
    #[error("invalid input: {0}")]
    Spec(String),
    /// Two inputs live in different dimensions, or a dimension is unsupported.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested evaluation path does not exist for this combination.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Integer result does not fit the target type.
    #[error("overflow: {0}")]
    Overflow(String),
    /// Non-finite intermediate values or failed convergence.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn spec_err(msg: impl Into<String>) -> Error {
    Error::Spec(msg.into())
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}

pub(crate) fn check_body_dim(d: usize) -> Result<()> {
    if d == 2 || d == 3 {
        Ok(())
    } else {
        Err(Error::Dimension {
            expected: 3,
            found: d,
        })
    }
}
