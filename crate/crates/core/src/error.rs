use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient rank mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),
    #[error("invalid isogeny for {spec}: {reason}")]
    InvalidIsogeny { spec: String, reason: String },
    #[error("weight is not dominant: {0}")]
    NonDominantWeight(String),
    #[error("rank {rank} exceeds the orbit enumeration cap {cap}")]
    OrbitRankCap { rank: usize, cap: usize },
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("invalid index assignment: {0}")]
    InvalidAssignment(String),
    #[error("invalid filtration request: {0}")]
    InvalidDegree(String),
    #[error("wrong group for this check: {0}")]
    WrongGroup(String),
}

pub type Result<T> = std::result::Result<T, Error>;
