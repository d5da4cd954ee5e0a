use thiserror::Error;

use crate::process::Edge;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("edge stream exhausted after {emitted} edges before min degree {k} was reached")]
    ExhaustedStream { emitted: u64, k: u32 },
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("invalid rotation: {0}")]
    InvalidRotation(String),
    #[error("graph too large for exact search: n = {n}, limit {limit}")]
    SizeLimit { n: usize, limit: usize },
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
