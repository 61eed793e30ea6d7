use thiserror::Error;

use crate::verify::MembershipReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value is out of range (vertex id, `d < 2`, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// An operation was called on an input that violates its contract.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The input graph is not an edge-maximal member of F(d, m).
    #[error("graph is not a member of F({d}, {m})")]
    NotMember {
        d: usize,
        m: usize,
        report: Box<MembershipReport>,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The instance exceeds the cap of an exhaustive routine.
    #[error("instance too large: {0}")]
    Size(String),

    /// A proven structural property failed to hold. Always a bug upstream.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Argument(_) | Error::Parse { .. } | Error::Size(_) => 2,
            Error::Io(_) => 3,
            Error::Precondition(_) | Error::NotMember { .. } => 4,
            Error::Internal(_) => 5,
        }
    }
}
