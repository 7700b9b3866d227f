use thiserror::Error;

use crate::graph::MAX_ORDER;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// What went wrong while decoding a graph6 string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Graph6Fault {
    Empty,
    SizeByte(u8),
    InvalidByte(u8),
    Truncated { expected: usize },
    TrailingData,
    NonzeroPadding,
}

impl std::fmt::Display for Graph6Fault {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Graph6Fault::Empty => write!(f, "empty input"),
            Graph6Fault::SizeByte(b) => write!(
                f,
                "size byte {b} outside the supported range {}..={}",
                64,
                63 + MAX_ORDER
            ),
            Graph6Fault::InvalidByte(b) => write!(f, "byte {b} is not a graph6 data character"),
            Graph6Fault::Truncated { expected } => {
                write!(f, "malformed length, expected {expected} bytes")
            }
            Graph6Fault::TrailingData => write!(f, "trailing data after the adjacency bits"),
            Graph6Fault::NonzeroPadding => write!(f, "padding bits are not zero"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 decode error at byte {offset}: {fault}")]
    Graph6 { offset: usize, fault: Graph6Fault },

    #[error("vertex count {0} outside the supported range 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),

    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex set is empty")]
    EmptyVertexSet,

    #[error("card size {k} out of range for a graph on {n} vertices")]
    CardSizeOutOfRange { k: usize, n: usize },

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("decks are not comparable: {0}")]
    DeckMismatch(String),

    #[error("not a realizable deck: {0}")]
    NotRealizable(String),

    #[error("inconsistent high-degree counts: {0}")]
    InconsistentHighCounts(String),

    #[error("unknown named graph `{0}`")]
    NamedSpec(String),

    #[error("malformed deck text at line {line}: {reason}")]
    DeckText { line: usize, reason: String },

    #[error("census cache: {0}")]
    Cache(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
