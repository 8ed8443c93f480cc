//! Exact toughness by separator enumeration.
//!
//! Toughness is the minimum of `|S| / omega(G - S)` over vertex sets `S`
//! whose removal leaves at least two components. Graphs that no vertex
//! set disconnects (complete graphs, single vertices) have no such `S`
//! and are reported as unbounded; parallel edges are irrelevant here.

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexSet};

/// Subset enumeration bound (2^n separators).
pub const TOUGHNESS_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ToughnessReport {
    /// No vertex set disconnects the graph.
    Unbounded,
    Finite {
        value: Rational64,
        /// First minimizing separator in ascending bitmask order.
        separator: VertexSet,
        components: usize,
    },
}

impl ToughnessReport {
    pub fn value(&self) -> Option<Rational64> {
        match self {
            ToughnessReport::Unbounded => None,
            ToughnessReport::Finite { value, .. } => Some(*value),
        }
    }

    /// Witness line in the fixed text form `S = {...}, omega = w, t = p/q`.
    pub fn witness_line(&self) -> String {
        match self {
            ToughnessReport::Unbounded => "t = unbounded".into(),
            ToughnessReport::Finite {
                value,
                separator,
                components,
            } => format!(
                "S = {separator}, omega = {components}, t = {}/{}",
                value.numer(),
                value.denom()
            ),
        }
    }
}

/// Number of connected components after deleting the vertices of `s`.
fn components_without(adjacency: &[Vec<usize>], n: usize, s: u64) -> usize {
    let mut seen = s;
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if seen >> start & 1 == 1 {
            continue;
        }
        count += 1;
        seen |= 1 << start;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Exact toughness with the minimizing separator.
pub fn toughness(g: &MultiGraph) -> Result<ToughnessReport> {
    let n = g.vertex_count();
    if n > TOUGHNESS_LIMIT {
        return Err(Error::Capacity {
            operation: "toughness",
            n,
            limit: TOUGHNESS_LIMIT,
        });
    }
    let mut adjacency = vec![Vec::new(); n];
    for e in g.edges() {
        adjacency[e.u].push(e.v);
        adjacency[e.v].push(e.u);
    }
    let mut best: Option<(Rational64, VertexSet, usize)> = None;
    for mask in 0u64..(1u64 << n) {
        let omega = components_without(&adjacency, n, mask);
        if omega < 2 {
            continue;
        }
        let ratio = Rational64::new(mask.count_ones() as i64, omega as i64);
        if best.as_ref().map(|(b, _, _)| ratio < *b).unwrap_or(true) {
            best = Some((ratio, VertexSet(mask), omega));
        }
    }
    Ok(match best {
        None => ToughnessReport::Unbounded,
        Some((value, separator, components)) => ToughnessReport::Finite {
            value,
            separator,
            components,
        },
    })
}

/// `toughness(g) >= t`, with unbounded toughness above every threshold.
pub fn is_t_tough(g: &MultiGraph, t: Rational64) -> Result<bool> {
    Ok(match toughness(g)? {
        ToughnessReport::Unbounded => true,
        ToughnessReport::Finite { value, .. } => value >= t,
    })
}
