use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("ground-set mismatch: {0}")]
    GroundMismatch(String),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("bad shift indices ({i}, {j}) for n = {n}")]
    BadIndices { i: u32, j: u32, n: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parameters out of range: {0}")]
    ParamsOutOfRange(String),

    #[error("orbit index {i} is not in {lo}..={hi}")]
    IndexNotMeaningful { i: u32, lo: u32, hi: u32 },

    #[error("enumeration of {count} items exceeds cap {cap}")]
    EnumerationTooLarge { count: u128, cap: u128 },

    #[error("typed edge ({i}, {t}) of type {edge_type} is not an edge of W")]
    TypedEdgeNotInW { i: u32, t: u32, edge_type: u8 },

    #[error("decomposition violation: {0}")]
    DecompositionViolation(String),

    #[error("not a fractional independent set: {0}")]
    NotAFractionalIndependentSet(String),

    #[error("not a vertex cover: {0}")]
    NotACover(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
