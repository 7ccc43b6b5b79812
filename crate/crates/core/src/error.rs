use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational literal `{0}`")]
    ParseRational(String),
    #[error("radicand {0} is not a squarefree integer >= 2")]
    InvalidRadicand(u64),
    #[error("mixed quadratic fields: sqrt({0}) and sqrt({1})")]
    FieldMismatch(u64, u64),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("invalid box: {0}")]
    InvalidBox(String),
    #[error("invalid scheme: {0}")]
    InvalidScheme(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("enumeration of {0} index candidates exceeds the configured limit")]
    EnumerationTooLarge(u128),
    #[error("invalid word `{0}`")]
    ParseWord(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
