use thiserror::Error;

use crate::graph::VertexId;
use crate::orient::Witness;

/// Errors raised by graph operations and decomposition pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("label count {labels} does not match vertex count {n}")]
    LabelCountMismatch { labels: usize, n: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("input graph contains a cycle")]
    CyclicInput,
    #[error("graph is not transitive")]
    NotTransitive,
    #[error("graph is not undirected")]
    NotUndirected,
    #[error("oracle bound exceeded: {n} vertices, bound is {bound}")]
    OracleBoundExceeded { n: usize, bound: usize },
    #[error("partition block {0:?} is not a module")]
    NotCongruence(Vec<VertexId>),
    #[error("vertex set {0:?} is not a module")]
    NotAModule(Vec<VertexId>),
    #[error("module kind is undefined for a single vertex")]
    SingletonModule,
    #[error("edge ({0}, {1}) is not in the graph")]
    EdgeNotInGraph(VertexId, VertexId),
    #[error("not a comparability graph: {0}")]
    NotComparability(Witness),
    #[error("orientation leaves vertices {0} and {1} unordered")]
    NotTotal(VertexId, VertexId),
    #[error("closure and orientation together contain a cycle")]
    Cyclic,
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
