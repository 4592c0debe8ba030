//! Error type shared across the solver.

use std::fmt;

/// Errors reported by the special functions, the equation layer and the
/// spectral machinery.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    Domain(String),
    /// Parameter set rejected before any computation was attempted.
    InvalidParameter(String),
    /// A solution set is not applicable at the given equation parameters;
    /// carries the violated restriction.
    Validity(String),
    /// An iterative scheme failed to settle within its budget.
    NonConvergence(String),
    /// A fractional power of a negative real was requested without a branch
    /// choice.
    Branch(String),
    /// Matrix dimensions do not agree.
    DimensionMismatch { expected: usize, found: usize },
    /// A quantity that must satisfy a closure/consistency condition missed
    /// its tolerance.
    Tolerance(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Validity(msg) => write!(f, "solution set not valid: {msg}"),
            Error::NonConvergence(msg) => write!(f, "no convergence: {msg}"),
            Error::Branch(msg) => write!(f, "branch not resolvable: {msg}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Tolerance(msg) => write!(f, "tolerance exceeded: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
