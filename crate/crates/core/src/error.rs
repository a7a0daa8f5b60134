use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// One violated invariant, located by a dotted path such as `points.p.weights[1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl Violation {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parabolic data ({} violation(s))", .0.len())]
    Invalid(Vec<Violation>),
    #[error("weights are required at every marked point")]
    MissingWeights,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("weight is not generic: {0}")]
    NonGeneric(String),
    #[error("requires gcd(r,d)=1 (r={r}, d={d})")]
    NotCoprime { r: u32, d: i64 },
    /// An identity that must hold unconditionally was violated. This is a bug.
    #[error("internal identity violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Violations carried by an [`Error::Invalid`], empty otherwise.
    pub fn violations(&self) -> &[Violation] {
        match self {
            Error::Invalid(v) => v,
            _ => &[],
        }
    }
}
