//! Error type shared by every module in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("loops are not allowed: edge {index} joins vertex {vertex} to itself")]
    LoopEdge { index: usize, vertex: usize },

    #[error("graphs must have at least one vertex")]
    EmptyGraph,

    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("edge id {id} is not present in the parent graph")]
    UnknownEdgeId { id: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{operation} supports at most n = {limit}, got n = {n}")]
    Capacity {
        operation: &'static str,
        n: usize,
        limit: usize,
    },

    /// Carries the dual certificate: a vertex partition `P` of the graph
    /// with fewer than `required * (|P| - 1)` crossing edges.
    #[error("graph is not {required}-tree-connected (violating partition has {} parts)", witness.len())]
    NotTreeConnected {
        required: usize,
        witness: Vec<Vec<usize>>,
    },

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("not a spanning subgraph: {0}")]
    NotSpanningSubgraph(String),

    /// A search exhausted its space without finding an object whose
    /// existence the implemented theory guarantees. Loud by design.
    #[error("FALSIFICATION EVENT: {0}")]
    Falsification(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
