use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph has no edges")]
    NoEdges,
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: usize, degree: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex count {0} is odd")]
    OddOrder(usize),
    #[error("vertex count {0} outside the supported range")]
    OutOfRange(usize),
    #[error("spectrum length {0} is odd")]
    OddSpectrum(usize),
    #[error("no iterate up to {0} lands in a catalogued gap")]
    MaxIterExceeded(usize),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
