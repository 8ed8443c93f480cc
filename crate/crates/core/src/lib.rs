//! Loopless multigraph machinery for spanning tree packing,
//! partition-connectivity, edge-maximizing c-partite factors,
//! degree-capped tree-connected factors, exact toughness, and connected
//! modulo-regular factor search, with desk-scale enumeration oracles
//! certifying everything the fast paths claim.

pub mod certificate;
pub mod connectivity;
pub mod corpus;
pub mod cpartite;
pub mod degree;
mod dsu;
mod enumerate;
pub mod error;
pub mod graph;
pub mod modulo;
pub mod packing;
pub mod setfn;
pub mod toughness;

pub use certificate::FactorCertificate;
pub use error::{Error, Result};
pub use graph::{Edge, MultiGraph, Partition, VertexSet};
pub use packing::PackingWitness;
pub use setfn::SetFunction;

/// Exact rational arithmetic used for caps, toughness, and scaled bounds.
pub type Rational = num_rational::Rational64;
