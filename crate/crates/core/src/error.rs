use thiserror::Error;

/// Errors raised across the crate. Indices in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LqnError {
    #[error("index out of range: {what} {index} (n = {n})")]
    IndexOutOfRange { what: &'static str, index: usize, n: usize },
    #[error("duplicate edge ({particle}, X{detector})")]
    DuplicateEdge { particle: usize, detector: usize },
    #[error("zero amplitude on edge ({particle}, X{detector})")]
    ZeroAmplitude { particle: usize, detector: usize },
    #[error("row {row} is not normalized: sum of squared amplitudes = {sum}")]
    RowNotNormalized { row: usize, sum: f64 },
    #[error("channel ({particle}, X{detector}) ends in a superposed internal state")]
    SuperposedInternalState { particle: usize, detector: usize },
    #[error("invalid perfect matching: {0}")]
    InvalidMatching(String),
    #[error("network has no perfect matching")]
    NoPerfectMatching,
    #[error("n = {n} exceeds the enumeration limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("state has zero norm")]
    ZeroState,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bad length: expected {expected}, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("n = {n} is too small (minimum {min})")]
    TooSmall { n: usize, min: usize },
    #[error("no amplitude preset {preset} for n = {n}")]
    NoPresetForN { preset: String, n: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, LqnError>;
