//! Error taxonomy shared by every module.
//!
//! The variants map one-to-one onto the process exit codes of the `waveback`
//! binary (see [`crate::app`]): config problems exit 2, kernel exponent
//! overflow exits 3, grid-coverage failures exit 4, and forward-solver
//! constraint violations exit 5. Tolerance verdicts are *not* errors — they
//! live in reports and only influence exit codes at the command layer.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A mathematical precondition was violated (negative length, point
    /// outside the admissible domain, and so on).
    #[error("domain error: {0}")]
    Domain(String),

    /// The kernel exponent guard tripped: evaluating the kernel would need
    /// `exp(max_exponent)` which exceeds the double-precision budget.
    #[error(
        "kernel exponent overflow: max Re F = {max_exponent:.3} exceeds the \
         exponent budget {budget:.0}; increase h (or c) before evaluating"
    )]
    Overflow {
        /// Largest real part of the exponent encountered or predicted.
        max_exponent: f64,
        /// The guard threshold (700 by default, slightly under `ln(f64::MAX)`).
        budget: f64,
    },

    /// A sampled trace does not cover the region an operation must integrate
    /// over, or claims support it does not have.
    #[error("coverage error: {0}")]
    Coverage(String),

    /// A forward-solver invariant (CFL bound, support margin, grid alignment)
    /// does not hold.
    #[error("solver constraint violated: {0}")]
    Solver(String),

    /// Configuration is structurally valid JSON but semantically unusable.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Underlying I/O failure while reading or writing artifacts.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// An input document (JSON configuration, CSV artifact) could not be
    /// parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl Error {
    /// Process exit code this error maps to (see the module docs).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Config(_) | Error::Parse(_) | Error::Io(_) => 2,
            Error::Overflow { .. } => 3,
            Error::Coverage(_) => 4,
            Error::Solver(_) => 5,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_interface_contract() {
        assert_eq!(Error::Config("x".into()).exit_code(), 2);
        assert_eq!(Error::Overflow { max_exponent: 800.0, budget: 700.0 }.exit_code(), 3);
        assert_eq!(Error::Coverage("x".into()).exit_code(), 4);
        assert_eq!(Error::Solver("x".into()).exit_code(), 5);
    }

    #[test]
    fn overflow_message_names_the_exponent() {
        let msg = Error::Overflow { max_exponent: 812.5, budget: 700.0 }.to_string();
        assert!(msg.contains("812.5"));
        assert!(msg.contains("700"));
    }
}
