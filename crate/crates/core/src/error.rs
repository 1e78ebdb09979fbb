use std::fmt;

use thiserror::Error;

use crate::decompose::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Reasons a path falls outside the domain of an operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainError {
    /// The path does not end at height 0.
    NotBalanced,
    /// The path starts with a down step where an up step is required.
    DownStart,
    /// The empty path was given where a nonempty one is required.
    Empty,
    /// The path re-touches or never leaves height 0.
    NotUnbalanced,
    /// The path has an odd number of steps.
    OddLength,
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            DomainError::NotBalanced => "path does not end at height 0",
            DomainError::DownStart => "path starts with a down step",
            DomainError::Empty => "path is empty",
            DomainError::NotUnbalanced => "path is not an unbalanced Dyck path",
            DomainError::OddLength => "path has odd length",
        };
        f.write_str(msg)
    }
}

impl std::error::Error for DomainError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid character {found:?} at index {index}")]
    Parse { index: usize, found: char },

    #[error("index {index} out of bounds for path of length {len}")]
    Index { index: usize, len: usize },

    #[error("{0}")]
    Range(String),

    #[error("{0}")]
    Domain(#[from] DomainError),

    #[error("invalid decomposition: {}", join_violations(.0))]
    Validation(Vec<Violation>),

    #[error("no crossing of level {level} before index {search_end}")]
    NoCrossing { level: i64, search_end: usize },

    #[error("{0}")]
    Precondition(String),
}

impl Error {
    /// Stable variant name, used by the command line front end.
    pub fn variant_name(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::Index { .. } => "IndexError",
            Error::Range(_) => "RangeError",
            Error::Domain(DomainError::NotBalanced) => "NotBalanced",
            Error::Domain(DomainError::DownStart) => "DownStart",
            Error::Domain(DomainError::Empty) => "Empty",
            Error::Domain(DomainError::NotUnbalanced) => "NotUnbalanced",
            Error::Domain(DomainError::OddLength) => "OddLength",
            Error::Validation(_) => "ValidationError",
            Error::NoCrossing { .. } => "NoCrossing",
            Error::Precondition(_) => "PreconditionError",
        }
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
