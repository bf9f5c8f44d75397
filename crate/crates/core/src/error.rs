use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("node {node} is out of range for a graph with {n_nodes} nodes")]
    InvalidNode { node: usize, n_nodes: usize },
    #[error("edge {edge} is out of range for a graph with {n_edges} edges")]
    InvalidEdge { edge: usize, n_edges: usize },
    #[error("link endpoints must differ (got {0} twice)")]
    DegenerateLink(usize),
    #[error("graphs are limited to {max} edges, got {got}")]
    TooManyEdges { got: usize, max: usize },
    #[error("{what} needs {needed} enumeration steps, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u64,
    },
    #[error("vector is not a flow of this graph")]
    NotAFlow,
    #[error("graph is not all-positive")]
    NotAllPositive,
    #[error("group order {0} is even; only odd orders are allowed here")]
    EvenOrder(u64),
    #[error("invalid abelian group: {0}")]
    InvalidGroup(String),
    #[error("residue class {class} has {got} samples, needs {needed}")]
    InsufficientSamples {
        class: usize,
        got: usize,
        needed: usize,
    },
    #[error("duplicate sample abscissa {0}")]
    DuplicateAbscissa(i64),
    #[error("samples are inconsistent with degree {degree}: k={k}")]
    InconsistentSamples { degree: usize, k: i64 },
    #[error("held-out validation failed at k={k}: fitted {fitted}, counted {counted}")]
    HeldOutMismatch {
        k: i64,
        fitted: String,
        counted: String,
    },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal error: {0}")]
    Internal(String),
}
