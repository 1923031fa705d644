use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),

    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("graph is empty")]
    EmptyGraph,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has {0} vertices; graph6 short form encodes at most 62")]
    TooManyForGraph6(usize),

    #[error("label {label} out of range 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("labeling covers {labeling} vertices but the graph has {graph}")]
    LabelingSizeMismatch { labeling: usize, graph: usize },

    #[error("labeling is not a bijection onto 1..={n}: {msg}")]
    NotBijective { n: usize, msg: String },

    #[error("{0} requires a closed labeling")]
    NotClosed(&'static str),

    #[error("{what} = {value} outside supported range {min}..={max}")]
    Guard {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    /// A cross-check between two independent code paths failed. Reaching
    /// this is a bug, never a property of the input.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
