use thiserror::Error;

use crate::eigen::EigenError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("problem size must be at least {min}, got {n}")]
    InvalidSize { n: usize, min: usize },

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("edge probability {name} = {value} exceeds 1 at n = {n}")]
    EdgeProbability { name: &'static str, value: f64, n: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid label {0}: labels must be +1 or -1")]
    InvalidLabel(i64),

    #[error("operation requires side information, got channel none")]
    MissingSideInfo,

    #[error("observation is not symmetric with zero diagonal: {0}")]
    NotObservation(String),

    #[error("rank-deficient SBM parameters (a1*a2 = b^2); use the rank-1 algorithm")]
    RankDeficient,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Eigen(#[from] EigenError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn range(name: &'static str, value: f64, range: &'static str) -> Self {
        Self::OutOfRange { name, value, range }
    }
}
