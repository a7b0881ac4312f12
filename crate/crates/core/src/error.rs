use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("block {index} has {found} members, expected {expected}")]
    BlockSizeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("block {index} contains vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("{n} vertices exceed the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("exhaustive verification supports at most {max} blocks, got {found}")]
    TooManyBlocks { found: usize, max: usize },
    #[error("the clique verifier only decides t = 2 (got t = {t})")]
    MethodUnsupported { t: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("vertices {0} and {1} of the proposed independent set share a block")]
    NotIndependent(usize, usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("{0} lies outside the covering table domain 6..=27")]
    OutOfTableRange(usize),
    #[error("no partition of {n} into at most {max_parts} parts from the covering table")]
    Infeasible { n: usize, max_parts: usize },
    #[error("no covering-partition value of {n} is at least {guess}")]
    NoValueAtLeast { n: usize, guess: usize },
    #[error("covering table line {line}: {reason}")]
    TableFormat { line: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("no tabulated configuration for n = {0} (expected 32..=70)")]
    OutOfRange(usize),
    #[error("unknown piece label {0:?}")]
    UnknownPiece(String),
    #[error("configuration has {0} pieces, at most 5 allowed")]
    TooManyPieces(usize),
    #[error("label permutation: {0}")]
    BadLabels(String),
    #[error(transparent)]
    Design(#[from] DesignError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToeError {
    #[error("toe count {0} outside the supported range")]
    OutOfRange(usize),
    #[error("invalid webbing instance: {0}")]
    InvalidInstance(String),
    #[error("corrupt cache: {0}")]
    CorruptCache(String),
    #[error("cache I/O: {0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TicketFileError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Design(#[from] DesignError),
}
