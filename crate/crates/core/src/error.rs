use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the group engine, the catalog loader and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at offset {position} near `{token}`: {message}")]
    Parse {
        token: String,
        position: usize,
        message: String,
    },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not a normal subgroup: {0}")]
    NotNormal(String),

    #[error("group is not abelian: {0}")]
    NotAbelian(String),

    #[error("element not in group: {0}")]
    NotMember(String),

    /// A theorem hypothesis does not hold for the input. Distinct from
    /// internal failures: the caller may still run a diagnostic.
    #[error("hypothesis not satisfied: {0}")]
    HypothesisNotSatisfied(String),

    #[error("resource cap `{cap_name}` = {cap} exceeded by {what} (needs {needed})")]
    Resource {
        cap_name: &'static str,
        cap: u64,
        what: String,
        needed: u64,
    },

    /// A computed certificate contradicted an identity that must hold. Always a bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("{file}:{line}: {message} (token `{token}`)")]
    Catalog {
        file: String,
        line: usize,
        token: String,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
