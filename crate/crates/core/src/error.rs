use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("point components do not pairwise commute")]
    NonCommuting,
    #[error("invalid slice frame: {0}")]
    InvalidFrame(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable q{index} out of range (nvars = {nvars})")]
    VarOutOfRange { index: usize, nvars: usize },
    #[error("unsupported instance class: {0}")]
    Unsupported(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
