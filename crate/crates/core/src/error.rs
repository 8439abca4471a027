use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid bit {ch:?} at byte {pos}")]
pub struct ParseBitsError {
    pub pos: usize,
    pub ch: char,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("duplicate edge {label}{mv:?} at node {node}")]
    DuplicateEdge {
        node: usize,
        label: String,
        mv: String,
    },
    #[error("move {0:?} contains a newline")]
    NewlineInMove(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DelayError {
    #[error("run of length {len} exceeds the delay enumeration limit of {limit}")]
    RunTooLong { len: usize, limit: usize },
    #[error("bounded run universe exceeds {limit} runs")]
    UniverseTooLarge { limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("base game {name} is not static within bounds: {detail}")]
    NotStatic { name: String, detail: String },
    #[error("max_steps must be at least 1")]
    ZeroSteps,
    #[error(transparent)]
    Delay(#[from] DelayError),
}
