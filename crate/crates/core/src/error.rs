//! Error type shared by all modules of the crate.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by construction and validation of quantum objects.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix or state dimensions do not match the operation's requirements.
    DimensionMismatch { expected: usize, found: usize },
    /// Operation requires a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// Entries contain NaN or infinities.
    NonFinite,
    /// Matrix deviates from its adjoint beyond tolerance.
    NotHermitian { max_deviation: f64 },
    /// Operator has an eigenvalue below the allowed negative tolerance.
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    /// State vector norm deviates from one beyond tolerance.
    NotNormalized { norm: f64 },
    /// Partial trace over an empty or out-of-range subsystem selection.
    InvalidSubsystems(String),
    /// Choi matrix violates the trace-preservation constraint.
    NotTracePreserving { max_deviation: f64 },
    /// POVM elements do not sum to the identity within tolerance.
    IncompleteValue { max_deviation: f64 },
    /// A scalar argument lies outside its admissible range.
    OutOfRange { name: &'static str, value: f64 },
    /// Program register selection is inconsistent with the qubit count.
    InvalidProgram(String),
    /// Linear system is singular or numerically rank deficient.
    SingularSystem,
    /// Gate wiring is inconsistent (repeated or out-of-range wires).
    InvalidCircuit(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix is not square: {rows}x{cols}")
            }
            Error::NonFinite => write!(f, "entries contain NaN or infinite values"),
            Error::NotHermitian { max_deviation } => {
                write!(f, "matrix is not Hermitian (max |M - M^dag| = {max_deviation:e})")
            }
            Error::NotPositiveSemidefinite { min_eigenvalue } => {
                write!(f, "operator is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")
            }
            Error::NotNormalized { norm } => {
                write!(f, "state is not normalized (norm {norm})")
            }
            Error::InvalidSubsystems(msg) => write!(f, "invalid subsystem selection: {msg}"),
            Error::NotTracePreserving { max_deviation } => {
                write!(f, "map is not trace preserving (max |Tr_out - id| = {max_deviation:e})")
            }
            Error::IncompleteValue { max_deviation } => {
                write!(f, "POVM elements do not sum to identity (max deviation {max_deviation:e})")
            }
            Error::OutOfRange { name, value } => {
                write!(f, "argument `{name}` out of range: {value}")
            }
            Error::InvalidProgram(msg) => write!(f, "invalid program register: {msg}"),
            Error::SingularSystem => write!(f, "linear system is singular or rank deficient"),
            Error::InvalidCircuit(msg) => write!(f, "invalid circuit: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
