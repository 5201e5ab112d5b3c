use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("arc {arc}: loop on node {node}")]
    LoopArc { arc: usize, node: usize },

    #[error("arc {arc}: duplicates arc {first} (nodes {u} and {v})")]
    ParallelArc {
        arc: usize,
        first: usize,
        u: usize,
        v: usize,
    },

    #[error("arc {arc}: node {node} outside 1..={n}")]
    NodeOutOfRange { arc: usize, node: usize, n: usize },

    #[error("probability {value} outside [0, 1]")]
    Probability { value: f64 },

    #[error("graph is disconnected with all arcs working ({components} components)")]
    Disconnected { components: usize },

    #[error("graph needs at least 2 nodes and 1 arc")]
    Degenerate,

    #[error("no arc probability: supply p or a per-arc probability column")]
    MissingProbability,

    #[error("per-arc probabilities present in input; p must not also be given")]
    ConflictingProbability,

    #[error("source and sink must differ (both {0})")]
    SameTerminals(usize),

    #[error("node {node} outside 1..={n}")]
    NodeIndex { node: usize, n: usize },

    #[error("state vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{arcs} arcs exceeds the limit of {limit}{hint}")]
    LimitExceeded {
        arcs: usize,
        limit: usize,
        hint: &'static str,
    },

    #[error("invalid argument: {0}")]
    Argument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
