//! Error types shared across the pricing library.

use std::path::PathBuf;

/// Coarse classification used by callers (notably the CLI) to map failures
/// onto process exit codes: bad inputs versus numerical breakdowns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The request itself was invalid: malformed files, inconsistent
    /// configuration, out-of-domain arguments, impossible schedules.
    InputError,
    /// Inputs were well-formed but a numerical procedure failed:
    /// calibration found no root, or an integration/simulation broke down.
    NumericalFailure,
}

/// All failures produced by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid argument value or inconsistent configuration.
    #[error("invalid input: {0}")]
    Input(String),

    /// A date/period schedule could not be built or is empty.
    #[error("schedule error: {0}")]
    Schedule(String),

    /// A query argument lies outside the function's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A mandatory input file is missing.
    #[error("missing input file: {}", .0.display())]
    MissingFile(PathBuf),

    /// A row or field in an input file could not be parsed.
    #[error("parse error in {file}, line {line}, column {column}: {message}")]
    Parse {
        /// File the offending row came from.
        file: String,
        /// 1-based line number (the header is line 1).
        line: usize,
        /// 1-based field index within the row.
        column: usize,
        /// What went wrong.
        message: String,
    },

    /// Parsed data violates a documented invariant of its type.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// Quotes admit no arbitrage-free calibration (negative implied hazard).
    #[error("arbitrage in quotes: {0}")]
    ArbitrageQuotes(String),

    /// A root-finder or calibration routine failed to converge.
    #[error("calibration failure: {0}")]
    Calibration(String),

    /// A numerical routine produced an unusable result.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// The exit-code class this error belongs to.
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Input(_)
            | Error::Schedule(_)
            | Error::Domain(_)
            | Error::MissingFile(_)
            | Error::Parse { .. }
            | Error::Invariant(_)
            | Error::ArbitrageQuotes(_) => ErrorClass::InputError,
            Error::Calibration(_) | Error::Numerical(_) => ErrorClass::NumericalFailure,
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
