use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid root system {family}{rank}: {reason}")]
    InvalidRootSystem {
        family: char,
        rank: usize,
        reason: &'static str,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("not a root subsystem: {0}")]
    NotASubsystem(String),

    #[error("weight {weight} is not admissible at level {level}")]
    NotAdmissible { weight: String, level: i64 },

    #[error("depth {0} exceeds the supported cap of 4")]
    DepthTooLarge(usize),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("{0} is not a simple current")]
    NotSimpleCurrent(String),

    #[error("not a VOA extension: {0}")]
    NotVoaExtension(String),

    #[error("twist vector violates (u|α) ≥ -1 for root {root}: (u|α) = {value}; apply a Weyl shift to u first")]
    TwistHypothesis { root: String, value: String },

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
