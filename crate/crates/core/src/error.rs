use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("invalid catalog: {0}")]
    InvalidCatalog(String),
    #[error("unknown cube type {0:?}")]
    UnknownColor(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("cell set is not face-connected")]
    Disconnected,
    #[error("integrity violation: {0}")]
    Integrity(String),
    #[error("parse error at token {token}: {message}")]
    Parse { token: usize, message: String },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("rotation rejected: {0}")]
    RotationRejected(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_))
    }
}
