use thiserror::Error;

use crate::graph::{Edge, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at {0}")]
    Loop(VertexId),
    #[error("parallel edge {0}")]
    ParallelEdge(Edge),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex {0} already exists")]
    DuplicateVertex(VertexId),
    #[error("malformed vertex id {0:?}")]
    BadVertexId(String),
    #[error("{blocks} blocks but {ids} new ids")]
    BlockCountMismatch { blocks: usize, ids: usize },
    #[error("vertex {0} appears in more than one block")]
    OverlappingBlocks(VertexId),
    #[error("merge would turn edge {0} into a loop")]
    MergeWouldCreateLoop(Edge),
    #[error("merge would make edges {0} and {1} parallel")]
    MergeWouldCreateParallelEdge(Edge, Edge),
    #[error("edge {0} is not incident to {1}")]
    NotIncident(Edge, VertexId),
    #[error("split of {0} has an empty part")]
    EmptyPart(VertexId),
    #[error("edge {0} is in both split parts")]
    PartsOverlap(Edge),
    #[error("edge {0} is in neither split part")]
    PartsIncomplete(Edge),
    #[error("labeling does not match the edge set: {0}")]
    LabelDomainMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("k must be at least 1 (got {0})")]
    InvalidK(i64),
    #[error("table kind {found} given where {expected} is required")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error("invalid block shape: {0}")]
    InvalidBlocks(String),
    #[error("observation {index} violated: {detail}")]
    ObservationViolated { index: String, detail: String },
    #[error("sequence scheme violated: {0}")]
    SequenceSchemeViolated(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("no {t} x {s} equal-sum arrangement exists: {reason}")]
    InfeasibleShape { t: u64, s: u64, reason: String },
    #[error("length {length} is not {t} x {s}")]
    LengthMismatch { length: u64, t: u64, s: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parity: {0}")]
    InvalidParity(String),
    #[error("factorization: {0}")]
    InvalidFactorization(String),
    #[error("parameters: {0}")]
    InvalidParams(String),
    #[error("palette collision: {0}")]
    PaletteCollision(String),
    #[error("no valid partition: {0}")]
    NoValidPartition(String),
    #[error("condition ({which}) violated: {detail}")]
    ConditionViolated { which: char, detail: String },
    #[error("indices: {0}")]
    InvalidIndices(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{edges} edges exceeds the exact-search cap of {cap}")]
    InfeasibleSize { edges: usize, cap: usize },
    #[error("component {0} is a lone edge, which has no local antimagic labeling")]
    K2Component(Edge),
}

#[derive(Debug, Error)]
pub enum ExportError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge {0} has no label")]
    MissingLabel(Edge),
}
