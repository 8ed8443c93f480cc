//! Machine-checkable evidence attached to factor search results.
//!
//! A certificate stores a factor as parent edge ids plus the claims made
//! about it (degrees, connectivity, bipartiteness, a tree packing, degree
//! caps, divisibility). Every claim is re-derivable from the edge set
//! alone, and [`FactorCertificate::validate`] does exactly that.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::packing::PackingWitness;

#[derive(Clone, Debug, Serialize)]
pub struct FactorCertificate {
    /// Parent edge ids of the factor, sorted.
    pub edge_ids: Vec<usize>,
    /// Per-vertex degrees in the factor.
    pub degrees: Vec<usize>,
    pub connected: bool,
    pub bipartite: bool,
    /// Edge-disjoint spanning trees inside the factor, when claimed.
    pub packing: Option<PackingWitness>,
    /// All degrees positive and divisible by this, when claimed.
    pub modulus: Option<i64>,
    /// Per-vertex degree caps the factor respects, when claimed.
    pub caps: Option<Vec<i64>>,
    /// Vertex with a specially reduced cap, when one was designated.
    pub special_vertex: Option<usize>,
}

impl FactorCertificate {
    /// Measures `factor` against `parent` and records the given claims.
    pub fn claim(
        parent: &MultiGraph,
        factor: &MultiGraph,
        packing: Option<PackingWitness>,
        modulus: Option<i64>,
        caps: Option<Vec<i64>>,
        special_vertex: Option<usize>,
    ) -> Result<FactorCertificate> {
        if factor.vertex_count() != parent.vertex_count() {
            return Err(Error::NotSpanningSubgraph(
                "factor and parent vertex counts differ".into(),
            ));
        }
        let mut edge_ids: Vec<usize> = factor.edge_ids().collect();
        edge_ids.sort_unstable();
        let cert = FactorCertificate {
            edge_ids,
            degrees: factor.degrees().to_vec(),
            connected: factor.is_connected(),
            bipartite: factor.two_coloring().is_some(),
            packing,
            modulus,
            caps,
            special_vertex,
        };
        cert.validate(parent)?;
        Ok(cert)
    }

    /// Rebuilds the factor from the stored edge ids.
    pub fn factor(&self, parent: &MultiGraph) -> Result<MultiGraph> {
        parent.spanning_subgraph(&self.edge_ids)
    }

    /// Re-verifies every stored claim from the edge set alone.
    pub fn validate(&self, parent: &MultiGraph) -> Result<()> {
        let factor = self.factor(parent)?;
        if factor.degrees() != self.degrees.as_slice() {
            return Err(Error::InvalidInput(
                "certificate degree table does not match the edge set".into(),
            ));
        }
        if factor.is_connected() != self.connected {
            return Err(Error::InvalidInput(
                "certificate connectivity flag is wrong".into(),
            ));
        }
        if (factor.two_coloring().is_some()) != self.bipartite {
            return Err(Error::InvalidInput(
                "certificate bipartite flag is wrong".into(),
            ));
        }
        if let Some(witness) = &self.packing {
            witness.verify(&factor)?;
        }
        if let Some(k) = self.modulus {
            if k < 1 {
                return Err(Error::InvalidInput("modulus must be positive".into()));
            }
            for (v, &d) in self.degrees.iter().enumerate() {
                if d == 0 || d as i64 % k != 0 {
                    return Err(Error::InvalidInput(format!(
                        "degree {d} at vertex {v} is not a positive multiple of {k}"
                    )));
                }
            }
        }
        if let Some(caps) = &self.caps {
            if caps.len() != self.degrees.len() {
                return Err(Error::InvalidInput("cap table has the wrong length".into()));
            }
            for (v, (&d, &cap)) in self.degrees.iter().zip(caps.iter()).enumerate() {
                if d as i64 > cap {
                    return Err(Error::InvalidInput(format!(
                        "degree {d} at vertex {v} exceeds cap {cap}"
                    )));
                }
            }
        }
        if let Some(u) = self.special_vertex {
            if u >= self.degrees.len() {
                return Err(Error::VertexOutOfRange {
                    index: u,
                    n: self.degrees.len(),
                });
            }
        }
        Ok(())
    }
}
