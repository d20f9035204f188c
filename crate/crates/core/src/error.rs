use crate::biset::Biset;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input or a violated precondition.
    #[error("usage error: {0}")]
    Usage(String),

    /// The candidate edges cannot cover the family; `witness` has no covering edge.
    #[error("infeasible instance: no candidate edge covers {witness}")]
    Infeasible { witness: Biset },

    /// An oracle found several minimal members for one `(u, v)` pair, so the
    /// family it represents is not crossing as claimed.
    #[error("family is not crossing: pair ({u},{v}) has {count} minimal members")]
    Ambiguous { u: usize, v: usize, count: usize },

    #[error("query not supported by this oracle: {0}")]
    Unsupported(&'static str),

    /// A guarantee the algorithms rely on failed at run time; points at an
    /// oracle whose structural claims are false.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Infeasible { .. } => 2,
            Error::Usage(_) | Error::Ambiguous { .. } | Error::Unsupported(_) => 3,
            Error::Invariant(_) => 4,
        }
    }
}
