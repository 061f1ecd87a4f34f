use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("loop edge ({0}, {0}) not allowed in a simple graph")]
    LoopEdge(usize),

    #[error("vertex {v} out of range for graph of order {n}")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("sigma2 undefined: no non-adjacent pair")]
    Sigma2Undefined,

    #[error("vertices must be distinct, got {0} twice")]
    IdenticalVertices(usize),

    #[error("palette size must be at least 1")]
    ZeroColors,

    #[error("iteration budget must be at least 1")]
    ZeroIterations,

    #[error("trial count must be at least 1")]
    ZeroTrials,

    #[error("not a path: {0}")]
    InvalidPath(String),

    #[error("coloring shape mismatch: coloring is for n={cn}, m={cm}, graph has n={gn}, m={gm}")]
    ShapeMismatch { cn: usize, cm: usize, gn: usize, gm: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("unsupported path length {0}: closed forms exist for lengths 2 and 3 only")]
    UnsupportedPathLength(usize),

    #[error("order must be at least 2, got {0}")]
    OrderTooSmall(u64),

    #[error("theorem {theorem} requires k >= {min_k}, got {k}")]
    PaletteTooSmall {
        theorem: &'static str,
        min_k: usize,
        k: usize,
    },

    #[error("unknown theorem id: {0}")]
    UnknownTheorem(String),

    #[error("palette size {k} exceeds the search color limit {limit}")]
    PaletteExceedsSearchLimit { k: usize, limit: usize },

    #[error("search state space too large: {states} states exceeds limit {limit}")]
    SearchSpaceTooLarge { states: u128, limit: u64 },

    #[error("edge budget exceeded: graph has {m} edges, budget allows {max_edges}")]
    EdgeBudgetExceeded { m: usize, max_edges: usize },

    #[error("search budget exceeded after {nodes} nodes")]
    SearchBudgetExceeded { nodes: u64 },

    #[error("palette range invalid for decision search: k={k}, graph has m={m}")]
    PaletteOutOfRange { k: usize, m: usize },

    #[error("invalid family spec: {0}")]
    InvalidFamily(String),

    #[error("retry budget exhausted: {0}")]
    RetriesExhausted(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
