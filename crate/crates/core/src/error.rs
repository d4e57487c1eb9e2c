//! Crate-wide error type with a coarse category used for CLI exit codes.

use thiserror::Error;

/// Everything fallible in this crate returns this error.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),

    /// `q` specialized to a root of unity of order 1 or 2, where the quantum
    /// plane degenerates (`q^2 = 1`).
    #[error("invalid q specialization: order {0} (need order >= 3 so that q^2 != 1)")]
    InvalidQOrder(u64),

    /// The given generator images violate the defining relation; the residual
    /// polynomial (rendered in text form) witnesses the failure.
    #[error("not a derivation: relation residual {residual}")]
    NotADerivation { residual: String },

    /// `ad - bc = 0`: the two binomial equations share a component.
    #[error("degenerate system: ad - bc = 0")]
    DegenerateSystem,

    /// Precondition violation on otherwise well-formed input.
    #[error("bad input: {0}")]
    BadInput(String),

    /// A cyclotomic conductor grew past the configured cap.
    #[error("conductor {required} exceeds cap {cap} (raise with QPI_MAX_CONDUCTOR)")]
    ConductorCap { required: u128, cap: u64 },

    /// Checked integer arithmetic overflowed.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// Two independent computation routes disagreed. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Coarse classification, one per CLI exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Exit code 2.
    Parse,
    /// Exit code 3.
    Domain,
    /// Exit code 4.
    Resource,
    /// Exit code 5.
    Internal,
}

impl ErrorCategory {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorCategory::Parse => 2,
            ErrorCategory::Domain => 3,
            ErrorCategory::Resource => 4,
            ErrorCategory::Internal => 5,
        }
    }
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Parse(_) => ErrorCategory::Parse,
            Error::InvalidQOrder(_)
            | Error::NotADerivation { .. }
            | Error::DegenerateSystem
            | Error::BadInput(_) => ErrorCategory::Domain,
            Error::ConductorCap { .. } | Error::Overflow(_) => ErrorCategory::Resource,
            Error::Internal(_) => ErrorCategory::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
