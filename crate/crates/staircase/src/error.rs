use thiserror::Error;

/// Crate-wide error type.
///
/// `Capability` is reserved for requests that exceed a configured resource
/// bound (oracle rank cap, enumeration budget); callers can distinguish it
/// from plain argument errors, which signal misuse.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("capability exceeded: {what} (limit {limit}, requested {requested})")]
    Capability {
        what: String,
        limit: u64,
        requested: u64,
    },

    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),

    #[error("mismatched host groups: {0}")]
    HostMismatch(String),

    #[error("series arithmetic error: {0}")]
    Arithmetic(String),
}

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn capability(what: impl Into<String>, limit: u64, requested: u64) -> Self {
        Error::Capability {
            what: what.into(),
            limit,
            requested,
        }
    }

    /// Exit code mandated for this error class by the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capability { .. } => 2,
            _ => 64,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
