use num_bigint::BigUint;
use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("both parts must be non-empty (got p = {p}, q = {q})")]
    EmptyPart { p: u32, q: u32 },
    #[error("vertex {0} is outside the graph")]
    UnknownVertex(Vertex),
    #[error("edge {0}{1} listed twice")]
    ParallelEdge(Vertex, Vertex),
    #[error("graph is disconnected")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("expected {expected} rotations, got {found}")]
    VertexCount { expected: usize, found: usize },
    #[error("rotation at {vertex} has length {found} but degree is {expected}")]
    RotationLength { vertex: Vertex, expected: usize, found: usize },
    #[error("rotation at {vertex} lists {neighbor} more than once")]
    RepeatedNeighbor { vertex: Vertex, neighbor: Vertex },
    #[error("rotation at {vertex} lists {neighbor}, which is not adjacent")]
    NotNeighbor { vertex: Vertex, neighbor: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `graph bipartite <p> <q>`")]
    BadHeader,
    #[error("expected `rot <vertex>: <neighbor> ...`")]
    BadRotationLine,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("rotation for {0} given twice")]
    DuplicateRotation(Vertex),
    #[error("no rotation given for {0}")]
    MissingRotation(Vertex),
    #[error("{vertex} lists {neighbor}, which is on the same side")]
    SameSide { vertex: Vertex, neighbor: Vertex },
    #[error("{vertex} lists {neighbor} more than once")]
    RepeatedNeighbor { vertex: Vertex, neighbor: Vertex },
    #[error("rotation at {vertex} has length {found} but degree is {expected}")]
    LengthMismatch { vertex: Vertex, expected: usize, found: usize },
    #[error("{0}")]
    Invalid(EmbeddingError),
    #[error("no embedding found")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("refusing to enumerate {count} rotation systems (budget {budget})")]
    BudgetExceeded { count: BigUint, budget: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("corner {position} at {vertex} is out of range (degree {degree})")]
    StaleCorner { vertex: Vertex, position: usize, degree: usize },
    #[error("{vertex} is flagged new but already present")]
    AlreadyPresent { vertex: Vertex },
    #[error("{vertex} is flagged existing but absent")]
    Absent { vertex: Vertex },
    #[error("new vertex {vertex} does not extend the index range contiguously")]
    NonContiguous { vertex: Vertex },
    #[error("v-type-edge needs an x midpoint and two distinct y endpoints")]
    MalformedVType,
    #[error("edge {0}{1} already present")]
    DuplicateEdge(Vertex, Vertex),
    #[error("expected {expected} corners, got {found}")]
    CornerCount { expected: usize, found: usize },
    #[error("corner for {found} given where {expected} was expected")]
    CornerVertex { expected: Vertex, found: Vertex },
    #[error("variant {variant} out of range ({count} variants)")]
    VariantOutOfRange { variant: usize, count: usize },
    #[error("n must be odd (got {0})")]
    EvenN(u32),
    #[error("refusing to materialize {count} embeddings (budget {budget})")]
    BudgetExceeded { count: BigUint, budget: u64 },
    #[error("choice sequence does not fit n = {n}: {reason}")]
    BadSequence { n: u32, reason: String },
    #[error("choice at stage {stage} does not give a one-face embedding")]
    NotOneFace { stage: String },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Claim(#[from] Box<ClaimFailure>),
}

impl From<GraphError> for ConstructError {
    fn from(e: GraphError) -> Self {
        ConstructError::Embedding(EmbeddingError::Graph(e))
    }
}

/// A stage produced fewer one-face completions than its lower bound.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("stage {stage}: observed {observed} one-face completions, need at least {required}\ninput embedding:\n{input}")]
pub struct ClaimFailure {
    pub stage: String,
    pub required: u64,
    pub observed: u64,
    /// Input embedding in text format.
    pub input: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("bound is defined for odd n only (got {0})")]
    EvenN(u64),
    #[error("n must be at least {min} (got {n})")]
    TooSmall { n: u64, min: u64 },
    #[error("factorial of negative number {0}")]
    NegativeFactorial(i64),
    #[error("double factorial undefined below -1 (got {0})")]
    DoubleFactorialDomain(i64),
    #[error("degree sequence is empty")]
    EmptySequence,
}
