use std::time::Duration;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph with {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(usize, usize),

    #[error("graph is disconnected: vertex {unreachable} is not reachable from vertex 0")]
    Disconnected { unreachable: usize },

    #[error("vertex {0} is claimed more than once")]
    DuplicateClaim(usize),

    #[error("claim lists violate alternation: A has {a} pebbles, B has {b}")]
    BadAlternation { a: usize, b: usize },

    #[error("player {0} has no claimed vertex")]
    EmptyClaims(char),

    #[error("{rounds} rounds need {needed} vertices but the graph has only {n}")]
    TooManyRounds { rounds: usize, needed: usize, n: usize },

    #[error("search budget exceeded after {nodes} nodes ({elapsed:?})")]
    BudgetExceeded { nodes: u64, elapsed: Duration },

    #[error("graph is not a tree ({edges} edges on {n} vertices)")]
    NotATree { n: usize, edges: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("generator would produce {requested} vertices, above the cap of {cap}")]
    SizeCap { requested: usize, cap: usize },

    #[error("strategy `{strategy}` played illegal vertex {vertex} after history {history:?}")]
    IllegalMove { strategy: String, vertex: usize, history: Vec<usize> },

    #[error("strategy `{strategy}` failed after history {history:?}: {reason}")]
    StrategyFailure { strategy: String, history: Vec<usize>, reason: String },

    #[error("graph has no {0} metadata")]
    MissingMetadata(&'static str),

    #[error("attaching vertex of degree {degree} would exceed the degree bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    #[error("projection leaves the vertex set: {0}")]
    OutsideVertexSet(String),

    #[error("enumeration cap exceeded: n = {n}, cap = {cap}")]
    EnumerationCap { n: usize, cap: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
