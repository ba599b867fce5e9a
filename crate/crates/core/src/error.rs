use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid closed walk: {0}")]
    InvalidWalk(String),

    #[error("{what} exceeds size cap ({actual} > {limit})")]
    SizeCap {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("invalid field order {q}: {reason}")]
    InvalidField { q: usize, reason: String },

    #[error("graph is not vertex-transitive")]
    NotVertexTransitive,

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("enumeration blow-up: estimated {estimate} cases exceeds limit {limit}")]
    BlowUp { estimate: u128, limit: u128 },

    #[error("search budget of {nodes} nodes exceeded")]
    BudgetExceeded { nodes: u64 },

    #[error("unknown configuration id `{0}`")]
    UnknownConfig(String),

    #[error("target lacks required property: {0}")]
    MissingProperty(String),

    #[error("invalid case specification: {0}")]
    InvalidCase(String),

    #[error("invalid configuration pattern: {0}")]
    InvalidPattern(String),
}
