//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop ({0},{0}) rejected")]
    SelfLoop(usize),
    #[error("edge ({0},{1}) already present")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0},{1}) not present")]
    MissingEdge(usize, usize),
    #[error("vertex {0} out of range (n = {1})")]
    UnknownVertex(usize, usize),
    #[error("contraction map does not partition the vertex set")]
    InvalidPartition,
    #[error("edge index {0} out of range (N = {1})")]
    IndexOutOfRange(usize, usize),
    #[error("sketches belong to different transforms")]
    TransformMismatch,
    #[error("link ({0},{1}) would create a cycle")]
    WouldCreateCycle(usize, usize),
    #[error("({0},{1}) is not a forest edge")]
    NotForestEdge(usize, usize),
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("sketch decode failed after retries")]
    SketchFailure,
    #[error("cluster of size {0} exceeds the exact verification cap {1}")]
    TooLarge(usize, usize),
    #[error("conductance of an empty cut side is undefined")]
    EmptySide,
    #[error("decremental deletion budget exhausted")]
    Terminated,
    #[error("graph has fewer than two vertices")]
    TooSmall,
    #[error("no cut witness is cached")]
    NoWitness,
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("unknown workload {0:?}")]
    UnknownWorkload(String),
    #[error("event {0}: {1}")]
    Engine(usize, String),
}

pub type Result<T> = std::result::Result<T, Error>;
