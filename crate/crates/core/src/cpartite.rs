//! Edge-maximizing induced c-partite factors.
//!
//! Assign every vertex one of `c` classes and keep exactly the edges that
//! cross classes. An assignment maximizing the kept edge count yields a
//! factor whose cut degrees dominate `(c-1)/c` of the parent's, and that
//! inherits a proportional share of the parent's partition-connectivity.
//! The exhaustive search finds a global optimum at desk scale; the local
//! search (single-vertex moves) runs at any size but certifies only the
//! per-vertex degree bound.

use std::ops::ControlFlow;

use rand::Rng;

use crate::connectivity::is_partition_connected;
use crate::corpus::rng;
use crate::enumerate::for_each_partition;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Partition, VertexSet};
use crate::setfn::SetFunction;

/// Exhaustive assignment enumeration bound.
pub const EXHAUSTIVE_LIMIT: usize = 12;

/// A c-partite induced factor: the class assignment, the crossing-edge
/// spanning subgraph (with parent edge ids), and its edge count.
#[derive(Clone, Debug)]
pub struct CPartiteFactor {
    pub classes: usize,
    pub assignment: Vec<usize>,
    pub factor: MultiGraph,
    pub crossing_count: usize,
}

impl CPartiteFactor {
    fn from_assignment(g: &MultiGraph, classes: usize, assignment: Vec<usize>) -> Result<Self> {
        let mut parts = vec![VertexSet::EMPTY; classes];
        for (v, &c) in assignment.iter().enumerate() {
            parts[c].insert(v);
        }
        let factor = g.induced_cpartite_factor(&parts)?;
        let crossing_count = factor.edge_count();
        Ok(CPartiteFactor {
            classes,
            assignment,
            factor,
            crossing_count,
        })
    }

    /// The nonempty classes as a partition of the vertex set.
    pub fn partition(&self) -> Partition {
        let n = self.assignment.len();
        let mut parts = vec![VertexSet::EMPTY; self.classes];
        for (v, &c) in self.assignment.iter().enumerate() {
            parts[c].insert(v);
        }
        let parts: Vec<VertexSet> = parts.into_iter().filter(|p| !p.is_empty()).collect();
        Partition::new(parts, VertexSet::full(n)).expect("assignment covers every vertex")
    }

    /// Serialization used by the command line: the assignment line then
    /// the retained edge ids.
    pub fn to_text(&self) -> String {
        let mut out = String::from("c");
        for (v, &c) in self.assignment.iter().enumerate() {
            out.push_str(&format!(" {v}:{c}"));
        }
        out.push('\n');
        out.push_str("ids");
        let mut ids: Vec<usize> = self.factor.edge_ids().collect();
        ids.sort_unstable();
        for id in ids {
            out.push_str(&format!(" {id}"));
        }
        out.push('\n');
        out
    }
}

/// Accepted-move trace of a local search run.
#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    /// crossing count after each accepted move (strictly increasing)
    pub accepted: Vec<usize>,
    pub sweeps: usize,
}

fn crossing_of(g: &MultiGraph, assignment: &[usize]) -> usize {
    g.edges()
        .iter()
        .filter(|e| assignment[e.u] != assignment[e.v])
        .count()
}

fn check_c(c: usize) -> Result<()> {
    if c < 2 {
        return Err(Error::InvalidInput(format!(
            "c-partite factors need c >= 2, got {c}"
        )));
    }
    Ok(())
}

/// Hill climbing over single-vertex class moves: round-robin by vertex
/// index, first strictly improving class accepted, until a full sweep
/// makes no move. Deterministic given the seed, which fixes the initial
/// assignment.
pub fn local_search_cpartite_with_stats(
    g: &MultiGraph,
    c: usize,
    seed: u64,
) -> Result<(CPartiteFactor, SearchStats)> {
    check_c(c)?;
    let n = g.vertex_count();
    let mut r = rng(seed);
    let mut assignment: Vec<usize> = (0..n).map(|_| r.random_range(0..c)).collect();

    // to_class[v][t]: multiplicity of edges from v into class t
    let mut to_class = vec![vec![0usize; c]; n];
    for e in g.edges() {
        to_class[e.u][assignment[e.v]] += 1;
        to_class[e.v][assignment[e.u]] += 1;
    }
    let mut crossing = crossing_of(g, &assignment);
    let mut stats = SearchStats::default();
    loop {
        stats.sweeps += 1;
        let mut moved = false;
        for v in 0..n {
            let cur = assignment[v];
            // moving v to t changes crossing by to_class[v][cur] - to_class[v][t];
            // ties keep the current class so the climb terminates
            let Some(target) = (0..c).find(|&t| t != cur && to_class[v][t] < to_class[v][cur])
            else {
                continue;
            };
            crossing += to_class[v][cur] - to_class[v][target];
            for e in g.edges() {
                if e.touches(v) {
                    let w = e.other_end(v);
                    to_class[w][cur] -= 1;
                    to_class[w][target] += 1;
                }
            }
            assignment[v] = target;
            stats.accepted.push(crossing);
            moved = true;
        }
        if !moved {
            break;
        }
    }
    debug_assert_eq!(crossing, crossing_of(g, &assignment));
    Ok((CPartiteFactor::from_assignment(g, c, assignment)?, stats))
}

pub fn local_search_cpartite(g: &MultiGraph, c: usize, seed: u64) -> Result<CPartiteFactor> {
    Ok(local_search_cpartite_with_stats(g, c, seed)?.0)
}

/// Best of `restarts` independent local searches (seeds `seed..seed+r`).
pub fn local_search_with_restarts(
    g: &MultiGraph,
    c: usize,
    seed: u64,
    restarts: u64,
) -> Result<CPartiteFactor> {
    let mut best: Option<CPartiteFactor> = None;
    for offset in 0..restarts.max(1) {
        let candidate = local_search_cpartite(g, c, seed.wrapping_add(offset))?;
        if best
            .as_ref()
            .map(|b| candidate.crossing_count > b.crossing_count)
            .unwrap_or(true)
        {
            best = Some(candidate);
        }
    }
    Ok(best.expect("at least one restart runs"))
}

/// A globally edge-maximum c-partite induced factor, by canonical
/// assignment enumeration (class relabelings are visited once).
pub fn exhaustive_max_cpartite(g: &MultiGraph, c: usize) -> Result<CPartiteFactor> {
    check_c(c)?;
    let n = g.vertex_count();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::Capacity {
            operation: "exhaustive_max_cpartite",
            n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for_each_partition(n, c, &mut |assignment, _| {
        let crossing = crossing_of(g, assignment);
        if best.as_ref().map(|(b, _)| crossing > *b).unwrap_or(true) {
            best = Some((crossing, assignment.to_vec()));
        }
        ControlFlow::Continue(())
    });
    let (_, assignment) = best.expect("at least the one-block partition exists");
    CPartiteFactor::from_assignment(g, c, assignment)
}

/// Global optimum when the vertex count permits, otherwise restarted
/// local search.
pub fn max_cpartite_factor(g: &MultiGraph, c: usize, seed: u64) -> Result<CPartiteFactor> {
    if g.vertex_count() <= EXHAUSTIVE_LIMIT {
        exhaustive_max_cpartite(g, c)
    } else {
        local_search_with_restarts(g, c, seed, 3)
    }
}

/// Outcome of the cyclic-shift certificate for a vertex set `x`.
///
/// `shifts_never_improve`: every cyclic reassignment of `x` across the
/// classes keeps the factor edge count at most the original (automatic at
/// a global optimum). `degree_bound_holds`: `c * d_H(x) >= (c-1) * d_G(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftCertificate {
    pub shifts_never_improve: bool,
    pub degree_bound_holds: bool,
}

impl ShiftCertificate {
    pub fn certified(self) -> bool {
        self.shifts_never_improve && self.degree_bound_holds
    }
}

/// Builds the `c - 1` cyclically shifted assignments for `x`, compares
/// their edge counts with the factor's, and checks the cut-degree bound.
pub fn cyclic_shift_certify(
    g: &MultiGraph,
    f: &CPartiteFactor,
    x: VertexSet,
) -> Result<ShiftCertificate> {
    let n = g.vertex_count();
    if f.assignment.len() != n {
        return Err(Error::InvalidInput(
            "factor was built over a different graph".into(),
        ));
    }
    let c = f.classes;
    let mut shifts_never_improve = true;
    let mut shifted = f.assignment.clone();
    for shift in 1..c {
        for v in 0..n {
            shifted[v] = if x.contains(v) {
                (f.assignment[v] + c - shift) % c
            } else {
                f.assignment[v]
            };
        }
        if crossing_of(g, &shifted) > f.crossing_count {
            shifts_never_improve = false;
            break;
        }
    }
    let d_h = f.factor.cut_degree(x)?;
    let d_g = g.cut_degree(x)?;
    let degree_bound_holds = c * d_h >= (c - 1) * d_g;
    Ok(ShiftCertificate {
        shifts_never_improve,
        degree_bound_holds,
    })
}

/// Whether the factor is `l`-partition-connected (the conclusion the shift
/// argument guarantees when the parent is `c l/(c-1)`-partition-connected).
pub fn certify_partition_connectivity(
    g: &MultiGraph,
    f: &CPartiteFactor,
    l: &SetFunction,
) -> Result<bool> {
    if f.assignment.len() != g.vertex_count() {
        return Err(Error::InvalidInput(
            "factor was built over a different graph".into(),
        ));
    }
    is_partition_connected(&f.factor, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::packing::tree_packing_number;

    #[test]
    fn path_crossing_is_full() {
        let path = MultiGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let f = local_search_cpartite(&path, 2, 1).unwrap();
        assert_eq!(f.crossing_count, 2, "a path is bipartite");
        assert_eq!(f.factor.edge_count(), 2);
    }

    #[test]
    fn exhaustive_matches_known_max_cuts() {
        let triangle = corpus::complete(3).unwrap();
        assert_eq!(exhaustive_max_cpartite(&triangle, 2).unwrap().crossing_count, 2);

        let k4 = corpus::complete(4).unwrap();
        assert_eq!(exhaustive_max_cpartite(&k4, 2).unwrap().crossing_count, 4);
        assert_eq!(exhaustive_max_cpartite(&k4, 3).unwrap().crossing_count, 5);
        assert_eq!(exhaustive_max_cpartite(&k4, 4).unwrap().crossing_count, 6);

        let c5 = corpus::cycle(5).unwrap();
        assert_eq!(exhaustive_max_cpartite(&c5, 2).unwrap().crossing_count, 4);
    }

    #[test]
    fn local_search_reaches_triangle_optimum() {
        let triangle = corpus::complete(3).unwrap();
        for seed in 0..10 {
            let f = local_search_cpartite(&triangle, 2, seed).unwrap();
            assert_eq!(f.crossing_count, 2);
        }
    }

    #[test]
    fn local_search_is_deterministic_and_monotone() {
        let g = corpus::random_multigraph(8, 16, 5).unwrap();
        let (f1, s1) = local_search_cpartite_with_stats(&g, 3, 42).unwrap();
        let (f2, _) = local_search_cpartite_with_stats(&g, 3, 42).unwrap();
        assert_eq!(f1.assignment, f2.assignment);
        for w in s1.accepted.windows(2) {
            assert!(w[0] < w[1], "accepted moves must strictly improve");
        }
        assert!(s1.accepted.len() <= g.edge_count());
    }

    #[test]
    fn shift_certificate_on_global_optimum() {
        let k4 = corpus::complete(4).unwrap();
        let f = exhaustive_max_cpartite(&k4, 2).unwrap();
        for mask in 0u64..16 {
            let cert = cyclic_shift_certify(&k4, &f, VertexSet(mask)).unwrap();
            assert!(cert.certified(), "optimum must certify for X = {}", VertexSet(mask));
        }
    }

    #[test]
    fn shift_certificate_fails_on_bad_bipartition() {
        // worst bipartition of C4: classes {0,1} and {2,3} keep only 2 edges
        let c4 = corpus::cycle(4).unwrap();
        let f = CPartiteFactor::from_assignment(&c4, 2, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(f.crossing_count, 2);
        let cert = cyclic_shift_certify(&c4, &f, VertexSet::from_iter([0, 3])).unwrap();
        assert!(!cert.degree_bound_holds, "d_H({{0,3}}) = 0 < half of 2");
        assert!(!cert.shifts_never_improve, "the swap repairs the bipartition");
    }

    #[test]
    fn singleton_bound_at_local_optimum() {
        let g = corpus::random_multigraph(7, 14, 9).unwrap();
        let f = local_search_cpartite(&g, 2, 3).unwrap();
        for v in 0..7 {
            let cert = cyclic_shift_certify(&g, &f, VertexSet::singleton(v)).unwrap();
            assert!(cert.degree_bound_holds);
        }
    }

    #[test]
    fn connectivity_certificate_examples() {
        let k4 = corpus::complete(4).unwrap();
        let f = exhaustive_max_cpartite(&k4, 2).unwrap();
        assert!(certify_partition_connectivity(&k4, &f, &SetFunction::uniform(1)).unwrap());

        let c4 = corpus::cycle(4).unwrap();
        let f = exhaustive_max_cpartite(&c4, 2).unwrap();
        assert!(certify_partition_connectivity(&c4, &f, &SetFunction::uniform(1)).unwrap());

        let doubled_k4 = corpus::doubled(&k4);
        assert_eq!(tree_packing_number(&doubled_k4), 4);
        let f = exhaustive_max_cpartite(&doubled_k4, 2).unwrap();
        assert!(certify_partition_connectivity(&doubled_k4, &f, &SetFunction::uniform(2)).unwrap());
    }

    #[test]
    fn rejects_degenerate_class_counts() {
        let k4 = corpus::complete(4).unwrap();
        assert!(local_search_cpartite(&k4, 1, 0).is_err());
        assert!(exhaustive_max_cpartite(&k4, 0).is_err());
    }
}
