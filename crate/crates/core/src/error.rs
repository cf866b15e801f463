use thiserror::Error;

use crate::geometry::PositionViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input geometry is degenerate for the requested operation.
    #[error("degenerate input ({reason}): ids {ids:?}")]
    Degenerate { reason: String, ids: Vec<usize> },

    #[error("point set is not in general position: {} violation(s)", .0.len())]
    GeneralPosition(Vec<PositionViolation>),

    #[error("coordinate of point {0} is not finite")]
    NonFinite(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A construction invariant failed. Indicates a bug or undetected degeneracy.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn degenerate(reason: impl Into<String>, ids: Vec<usize>) -> Self {
        Error::Degenerate {
            reason: reason.into(),
            ids,
        }
    }

    /// Whether this error came from a geometric degeneracy gate rather than
    /// malformed input.
    pub fn is_degeneracy(&self) -> bool {
        matches!(self, Error::Degenerate { .. } | Error::GeneralPosition(_))
    }

    /// Ids named by a degeneracy error, if any.
    pub fn offending_ids(&self) -> Vec<usize> {
        match self {
            Error::Degenerate { ids, .. } => ids.clone(),
            Error::GeneralPosition(v) => {
                let mut ids: Vec<usize> = v.iter().flat_map(|p| [p.first, p.second]).collect();
                ids.sort_unstable();
                ids.dedup();
                ids
            }
            _ => Vec::new(),
        }
    }
}
