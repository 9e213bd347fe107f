use thiserror::Error;

use crate::graph::{Edge, Vertex};
use crate::set::VertexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// The defining condition of a binary tree that a cluster family violates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeViolation {
    #[error("empty cluster")]
    EmptyCluster,
    #[error("cluster {0} is not a subset of the ground set")]
    OutsideGroundSet(VertexSet),
    #[error("singleton {{{0}}} is missing")]
    MissingSingleton(Vertex),
    #[error("root cluster {0} is missing")]
    MissingRoot(VertexSet),
    #[error("cluster {0} has no sibling")]
    NoSibling(VertexSet),
    #[error("cluster {cluster} has more than one sibling ({first} and {second})")]
    AmbiguousSibling {
        cluster: VertexSet,
        first: VertexSet,
        second: VertexSet,
    },
    #[error("expected {expected} clusters, found {found}")]
    Cardinality { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("unknown edge {0}")]
    UnknownEdge(Edge),
    #[error("vertex sets overlap on {0}")]
    Overlap(VertexSet),
    #[error("{0} is not a subset of the vertex set")]
    NotSubset(VertexSet),
    #[error("restriction to an empty vertex set")]
    EmptyRestriction,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid binary tree: {0}")]
    InvalidTree(TreeViolation),
    #[error("tree text: {0}")]
    TreeSyntax(String),
    #[error("repeated leaf {0}")]
    RepeatedLeaf(Vertex),
    #[error("ground set {found} does not match vertex set {expected}")]
    GroundSetMismatch {
        expected: VertexSet,
        found: VertexSet,
    },
    #[error("unknown cluster {0}")]
    UnknownCluster(VertexSet),
    #[error("the root cluster has no sibling or parent")]
    RootCluster,
    #[error("tree is not linear")]
    NotLinear,
    #[error("reassembling is not strict: siblings {0} and {1} share no edge")]
    NotStrict(VertexSet, VertexSet),
    #[error("arrangement is not a permutation of the vertex set: {0}")]
    PermutationMismatch(String),
    #[error("edge ordering is not a permutation of the edge set: {0}")]
    IncompleteOrdering(String),
    #[error("invalid partition chain: {0}")]
    InvalidChain(String),
    #[error("{what} has {n} vertices, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("no vertex of degree >= {degree} can follow anchor {anchor}")]
    AnchorInfeasible { anchor: Vertex, degree: usize },
    #[error("maximum degree {0} exceeds 3")]
    DegreeTooLarge(usize),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("inner solver failed: {0}")]
    Solver(String),
}

impl Error {
    /// True for failures caused by instance size rather than malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::SizeLimit { .. })
    }
}

impl From<TreeViolation> for Error {
    fn from(v: TreeViolation) -> Self {
        Error::InvalidTree(v)
    }
}
