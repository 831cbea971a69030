use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cycle detected: {}", cycle.join(" -> "))]
    CycleDetected { cycle: Vec<String> },

    #[error("node '{node}' references missing parent '{parent}'")]
    DanglingParent { node: String, parent: String },

    #[error("invalid distribution on node '{node}': {reason}")]
    InvalidDistribution { node: String, reason: String },

    #[error("node '{node}' produced a non-finite value at draw {draw}")]
    Numeric { node: String, draw: usize },

    #[error("node '{node}' exceeded {limit} consecutive rejections at draw {draw}")]
    RejectionLimit { node: String, draw: usize, limit: usize },

    #[error("invalid plan: {reason}")]
    InvalidPlan { reason: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error: {message}")]
    Schema { message: String },

    #[error("unknown practice level '{value}' (expected one of: never, occasionally, about_half, frequently, almost_used)")]
    Level { value: String },

    #[error("unknown case study '{name}' (expected 'repo' or 'abrahamsson')")]
    UnknownCase { name: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
