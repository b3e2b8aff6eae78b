use thiserror::Error;

/// Errors produced by field construction, polynomial arithmetic and the
/// analyses built on top of them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field of order {p}^{n} exceeds the supported size cap of {cap}")]
    FieldTooLarge { p: u64, n: u32, cap: u64 },
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("element code {code} out of range for a field of order {q}")]
    BadElement { code: u64, q: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// A documented precondition of an operation does not hold for the input.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A mathematical identity that must always hold was violated. These
    /// never fire on correct inputs; the message carries the counterexample.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// Process exit code for the CLI: 1 for malformed input, 2 for
    /// precondition failures, 3 for invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::NotPrime(_) | Error::BadModulus(_) | Error::BadElement { .. } => 1,
            Error::Invariant(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
