use thiserror::Error;

/// Errors raised by graph construction, exploration and counting.
#[derive(Debug, Error)]
pub enum Error {
    #[error("class sizes must be positive (got n={n}, m={m})")]
    EmptyClass { n: usize, m: usize },

    #[error("edge ({white}, {black}) is outside K_{{{n},{m}}}")]
    EdgeOutOfRange {
        white: usize,
        black: usize,
        n: usize,
        m: usize,
    },

    #[error("duplicate edge ({white}, {black})")]
    DuplicateEdge { white: usize, black: usize },

    #[error("graph is not connected spanning")]
    Disconnected,

    #[error("graph is not a spanning tree ({edges} edges, expected {expected})")]
    NotATree { edges: usize, expected: usize },

    #[error("instance too large for oracle: {subsets} edge subsets exceed budget {budget}")]
    OracleBudget { subsets: String, budget: u64 },

    #[error(
        "instance too large for exact enumeration: {pairs} composition pairs exceed budget {budget}; use estimate_count instead"
    )]
    ExactBudget { pairs: String, budget: u64 },

    #[error("child counts are not admissible: {0}")]
    Inadmissible(String),

    #[error("shift index {index} out of range 0..={len}")]
    ShiftOutOfRange { index: usize, len: usize },

    #[error("increment {0} is below -1; path is not downward skip-free")]
    NotSkipFree(i64),

    #[error("path total is {0}, a bridge must end at -1")]
    NotABridge(i64),

    #[error("inconsistent exploration record: {0}")]
    InconsistentRecord(String),

    #[error("graph file line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
