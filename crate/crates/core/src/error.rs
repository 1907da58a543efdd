use thiserror::Error;

use crate::optimize::OptimizationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("index out of range: {0}")]
    Index(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no restart reached stationarity (best projected-gradient norm {:.3e})", .0.gradient_norm)]
    NonConvergence(Box<OptimizationReport>),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
