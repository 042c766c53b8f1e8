use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall {
        what: &'static str,
        min: u64,
        got: u64,
    },
    #[error("{what} must be at most {max}, got {got}")]
    TooLarge {
        what: &'static str,
        max: u64,
        got: u64,
    },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("extremal variant {variant} requires n = 3i+1 >= 4, got n = {n}")]
    InvalidVariant { variant: &'static str, n: usize },
    #[error("MIS enumeration exceeded the cap of {cap} sets (found {found} before stopping)")]
    CapExceeded { cap: usize, found: usize },
    #[error("vertex {0} is isolated; it lies in every MIS so no cover set can separate")]
    IsolatedVertex(usize),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("complexity table for N = {limit} needs about {bytes} bytes, above the {cap} byte cap")]
    MemoryCap { limit: usize, bytes: u64, cap: u64 },
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
