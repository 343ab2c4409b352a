use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grid parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("grid is not a valid graph grid diagram: {0}")]
    InvalidGrid(String),

    #[error("grid is not saturated (some row or column has no X)")]
    NotSaturated,

    #[error("grid size {n} exceeds the limit of {max}")]
    GridTooLarge { n: usize, max: usize },

    #[error("arc tracing failed: {0}")]
    Trace(String),

    #[error("grading inconsistency: {0}")]
    Grading(String),

    #[error("boundary arrow leaves its bigrading block: {0}")]
    BlockCrossing(String),

    #[error("tensor division failed: {0}")]
    Division(String),

    #[error("illegal move: {0}")]
    Move(String),

    #[error("move script line {line}: {reason}")]
    Script { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
