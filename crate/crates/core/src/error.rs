//! Shared error type for the whole library.
//!
//! Variants are grouped by how a caller should react: bad arguments or
//! configuration, bad data (files, records, inputs), and numerical
//! failures (singular systems, non-convergence, non-finite values).

use std::fmt;

#[derive(Debug)]
pub enum Error {
    /// An argument violated a documented precondition.
    Argument(String),
    /// A run configuration is invalid or inconsistent.
    Config(String),
    /// Input data is unusable (zero column, non-binary target, ...).
    Data(String),
    /// A serialized record could not be parsed. `line` is 1-based.
    Format { line: usize, message: String },
    /// A file was written by an incompatible format version.
    Version { found: u32, expected: u32 },
    /// A linear system is singular or too ill-conditioned to solve.
    Singular { condition: f64 },
    /// An iterative method exhausted its budget.
    NoConvergence { what: String },
    /// A computation produced NaN or infinity where it must not.
    NonFinite(String),
    Io(std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code for the CLI contract: 1 usage/config, 2 data, 3 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Argument(_) | Error::Config(_) => 1,
            Error::Data(_) | Error::Format { .. } | Error::Version { .. } | Error::Io(_) => 2,
            Error::Singular { .. } | Error::NoConvergence { .. } | Error::NonFinite(_) => 3,
        }
    }

    /// Short machine-readable kind tag used in diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Argument(_) => "argument",
            Error::Config(_) => "config",
            Error::Data(_) => "data",
            Error::Format { .. } => "format",
            Error::Version { .. } => "version",
            Error::Singular { .. } => "singular",
            Error::NoConvergence { .. } => "no-convergence",
            Error::NonFinite(_) => "non-finite",
            Error::Io(_) => "io",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Argument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Config(msg) => write!(f, "invalid configuration: {msg}"),
            Error::Data(msg) => write!(f, "bad data: {msg}"),
            Error::Format { line, message } => write!(f, "malformed record at line {line}: {message}"),
            Error::Version { found, expected } => {
                write!(f, "format version mismatch: found {found}, expected {expected}")
            }
            Error::Singular { condition } => {
                write!(f, "matrix is singular or near-singular (condition estimate {condition:.3e})")
            }
            Error::NoConvergence { what } => write!(f, "{what} did not converge within its iteration budget"),
            Error::NonFinite(msg) => write!(f, "non-finite value: {msg}"),
            Error::Io(err) => write!(f, "i/o error: {err}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(err) => Some(err),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err)
    }
}
