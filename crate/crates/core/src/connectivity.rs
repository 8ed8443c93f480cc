//! Partition-connectivity tests, components, and the deficiency measure.
//!
//! A graph is `l`-partition-connected when every partition `P` of its
//! vertex set has at least `sum_{A in P} l(A) - l(V)` crossing edges. For
//! uniform integer `l` this is equivalent to containing that many
//! edge-disjoint spanning trees, so those queries route through the
//! packing engine and scale well; everything else enumerates partitions
//! at desk scale. Scaled queries (`r * l` for rational `r > 0`) keep all
//! comparisons in exact integer cross-multiplied form.

use std::ops::ControlFlow;

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::enumerate::for_each_partition;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Partition, VertexSet};
use crate::packing::has_tree_packing;
use crate::setfn::SetFunction;

/// Partition enumeration bound for table-mode and fractional queries.
pub const ENUMERATION_LIMIT: usize = 12;
/// Component merging bound for uniform integer queries.
pub const UNIFORM_COMPONENT_LIMIT: usize = 16;

fn scale_check(scale: Rational64) -> Result<(i64, i64)> {
    if !scale.is_positive() {
        return Err(Error::InvalidInput(format!(
            "scale factor must be positive, got {scale}"
        )));
    }
    Ok((*scale.numer(), *scale.denom()))
}

/// Uniform integer threshold reachable through tree packing, if any.
fn packing_threshold(l: &SetFunction, scale: Rational64) -> Option<i64> {
    match l {
        SetFunction::Uniform(m) if scale.is_integer() => Some(m * scale.to_integer()),
        _ => None,
    }
}

fn enumerate_partition_connected(
    g: &MultiGraph,
    l: &SetFunction,
    num: i64,
    den: i64,
) -> Result<bool> {
    let n = g.vertex_count();
    if n > ENUMERATION_LIMIT {
        return Err(Error::Capacity {
            operation: "is_partition_connected (partition enumeration)",
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let full_value = l.value(VertexSet::full(n));
    let edges = g.edges();
    let mut ok = true;
    for_each_partition(n, n, &mut |assignment, blocks| {
        let mut masks = vec![VertexSet::EMPTY; blocks];
        for (v, &b) in assignment.iter().enumerate() {
            masks[b].insert(v);
        }
        let value_sum: i64 = masks.iter().map(|&a| l.value(a)).sum();
        let crossing = edges
            .iter()
            .filter(|e| assignment[e.u] != assignment[e.v])
            .count() as i64;
        // e_G(P) >= (num/den) * (sum l(A) - l(V))
        if den * crossing < num * (value_sum - full_value) {
            ok = false;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(ok)
}

/// Whether `g` is `l`-partition-connected.
pub fn is_partition_connected(g: &MultiGraph, l: &SetFunction) -> Result<bool> {
    is_partition_connected_scaled(g, l, Rational64::from_integer(1))
}

/// Whether `g` is `(scale * l)`-partition-connected.
pub fn is_partition_connected_scaled(
    g: &MultiGraph,
    l: &SetFunction,
    scale: Rational64,
) -> Result<bool> {
    let (num, den) = scale_check(scale)?;
    if let Some(m) = packing_threshold(l, scale) {
        if m <= 0 {
            return Ok(true);
        }
        return Ok(has_tree_packing(g, m as usize));
    }
    enumerate_partition_connected(g, l, num, den)
}

fn component_limit(g: &MultiGraph, l: &SetFunction, scale: Rational64) -> Result<()> {
    let n = g.vertex_count();
    let (limit, operation): (usize, &'static str) = if packing_threshold(l, scale).is_some() {
        (UNIFORM_COMPONENT_LIMIT, "partition_connected_components (uniform)")
    } else {
        (ENUMERATION_LIMIT, "partition_connected_components (table)")
    };
    if n > limit {
        return Err(Error::Capacity {
            operation,
            n,
            limit,
        });
    }
    Ok(())
}

fn induced_partition_connected(
    g: &MultiGraph,
    l: &SetFunction,
    scale: Rational64,
    union: VertexSet,
) -> Result<bool> {
    let (sub, map) = g.induced_subgraph(union)?;
    let l_sub = l.restricted(&map)?;
    is_partition_connected_scaled(&sub, &l_sub, scale)
}

/// The unique coarsest partition of the vertex set into sets inducing
/// `(scale * l)`-partition-connected subgraphs, for intersecting
/// supermodular `l`. Computed by merging from singletons to a fixpoint:
/// whenever the union of some parts induces a partition-connected
/// subgraph, those parts collapse into one.
pub fn partition_connected_components_scaled(
    g: &MultiGraph,
    l: &SetFunction,
    scale: Rational64,
) -> Result<Partition> {
    scale_check(scale)?;
    component_limit(g, l, scale)?;
    if !l.is_intersecting_supermodular()? {
        return Err(Error::InvalidInput(
            "partition-connected components need an intersecting supermodular function".into(),
        ));
    }
    let n = g.vertex_count();
    let uniform_positive = match l {
        SetFunction::Uniform(m) => *m > 0,
        _ => false,
    };
    let mut parts: Vec<VertexSet> = (0..n).map(VertexSet::singleton).collect();
    'merge: loop {
        let p = parts.len();
        // subsets of parts, smallest first
        for size in 2..=p {
            for mask in 1u32..(1u32 << p) {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let mut union = VertexSet::EMPTY;
                for (i, part) in parts.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        union = union.union(*part);
                    }
                }
                // positive uniform thresholds need a connected union
                if uniform_positive {
                    let (sub, _) = g.induced_subgraph(union)?;
                    if !sub.is_connected() {
                        continue;
                    }
                }
                if induced_partition_connected(g, l, scale, union)? {
                    let mut next: Vec<VertexSet> = parts
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| mask >> i & 1 == 0)
                        .map(|(_, &part)| part)
                        .collect();
                    next.push(union);
                    next.sort_by_key(|part| part.min_vertex());
                    parts = next;
                    continue 'merge;
                }
            }
        }
        break;
    }
    Partition::new(parts, VertexSet::full(n))
}

pub fn partition_connected_components(g: &MultiGraph, l: &SetFunction) -> Result<Partition> {
    partition_connected_components_scaled(g, l, Rational64::from_integer(1))
}

/// The partition-connectivity deficiency `sum_{A in P} l(A) - e_G(P)`
/// evaluated at the component partition `P`.
pub fn theta(g: &MultiGraph, l: &SetFunction) -> Result<i64> {
    let value = theta_scaled(g, l, Rational64::from_integer(1))?;
    debug_assert!(value.is_integer());
    Ok(value.to_integer())
}

/// Deficiency of the scaled function `scale * l`.
pub fn theta_scaled(g: &MultiGraph, l: &SetFunction, scale: Rational64) -> Result<Rational64> {
    let components = partition_connected_components_scaled(g, l, scale)?;
    let value_sum: i64 = components.parts().iter().map(|&a| l.value(a)).sum();
    let crossing = g.crossing_edge_count(&components)? as i64;
    Ok(scale * Rational64::from_integer(value_sum) - Rational64::from_integer(crossing))
}

/// Deficiency of `scale * l` on the graph obtained by deleting `s`;
/// deleting everything leaves deficiency zero.
pub fn theta_minus(
    g: &MultiGraph,
    l: &SetFunction,
    s: VertexSet,
    scale: Rational64,
) -> Result<Rational64> {
    let n = g.vertex_count();
    if s == VertexSet::full(n) {
        return Ok(Rational64::zero());
    }
    let (sub, map) = g.delete_vertices(s)?;
    let l_sub = l.restricted(&map)?;
    theta_scaled(&sub, &l_sub, scale)
}

/// The spanning-tree packing value by direct partition enumeration:
/// `min over partitions with at least two parts of
/// floor(e_G(P) / (|P| - 1))`. Exponential; the scalable route is
/// [`tree_packing_number`], and the two must agree.
pub fn nash_williams_formula(g: &MultiGraph) -> Result<usize> {
    let n = g.vertex_count();
    if n == 1 {
        return Ok(usize::MAX);
    }
    if n > ENUMERATION_LIMIT {
        return Err(Error::Capacity {
            operation: "nash_williams_formula",
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let edges = g.edges();
    let mut best = usize::MAX;
    for_each_partition(n, n, &mut |assignment, blocks| {
        if blocks >= 2 {
            let crossing = edges
                .iter()
                .filter(|e| assignment[e.u] != assignment[e.v])
                .count();
            best = best.min(crossing / (blocks - 1));
        }
        ControlFlow::Continue(())
    });
    Ok(best)
}

/// Convenience check `tree_packing_number(g) >= m` with the documented
/// single-vertex convention.
pub fn is_tree_connected(g: &MultiGraph, m: usize) -> bool {
    has_tree_packing(g, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::packing::tree_packing_number;

    fn uniform(m: i64) -> SetFunction {
        SetFunction::uniform(m)
    }

    #[test]
    fn connectivity_is_one_partition_connectivity() {
        let c4 = corpus::cycle(4).unwrap();
        assert!(is_partition_connected(&c4, &uniform(1)).unwrap());
        let split = MultiGraph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(!is_partition_connected(&split, &uniform(1)).unwrap());
    }

    #[test]
    fn cycle_is_not_two_partition_connected() {
        let c4 = corpus::cycle(4).unwrap();
        assert!(!is_partition_connected(&c4, &uniform(2)).unwrap());
        let k4 = corpus::complete(4).unwrap();
        assert!(is_partition_connected(&k4, &uniform(2)).unwrap());
    }

    #[test]
    fn table_mode_matches_packing_on_uniform_values() {
        let k4 = corpus::complete(4).unwrap();
        for m in 0..4 {
            let table = SetFunction::table_from_fn(4, |_| m).unwrap();
            assert_eq!(
                is_partition_connected(&k4, &table).unwrap(),
                is_partition_connected(&k4, &uniform(m)).unwrap(),
                "m = {m}"
            );
        }
    }

    #[test]
    fn fractional_scaling_distinguishes_thresholds() {
        // C4 has strength 1: it is (4/3)-partition-connected? e(P)/(|P|-1):
        // singletons give 4/3, so scale 4/3 holds and 3/2 fails.
        let c4 = corpus::cycle(4).unwrap();
        assert!(
            is_partition_connected_scaled(&c4, &uniform(1), Rational64::new(4, 3)).unwrap()
        );
        assert!(
            !is_partition_connected_scaled(&c4, &uniform(1), Rational64::new(3, 2)).unwrap()
        );
    }

    #[test]
    fn components_examples() {
        let two_triangles = MultiGraph::new(
            6,
            vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
        )
        .unwrap();
        let p = partition_connected_components(&two_triangles, &uniform(1)).unwrap();
        assert_eq!(p.parts().len(), 2);
        assert_eq!(p.parts()[0], VertexSet::from_iter([0, 1, 2]));
        assert_eq!(p.parts()[1], VertexSet::from_iter([3, 4, 5]));

        let c4 = corpus::cycle(4).unwrap();
        let p = partition_connected_components(&c4, &uniform(2)).unwrap();
        assert_eq!(p.len(), 4, "no induced subgraph of C4 is 2-partition-connected");

        let k4 = corpus::complete(4).unwrap();
        let p = partition_connected_components(&k4, &uniform(2)).unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn theta_examples() {
        let k4 = corpus::complete(4).unwrap();
        assert_eq!(theta(&k4, &uniform(1)).unwrap(), 1);

        let edgeless = MultiGraph::new(5, Vec::new()).unwrap();
        assert_eq!(theta(&edgeless, &uniform(1)).unwrap(), 5);

        let c4 = corpus::cycle(4).unwrap();
        assert_eq!(theta(&c4, &uniform(2)).unwrap(), 4);
    }

    #[test]
    fn theta_minus_full_deletion_is_zero() {
        let k4 = corpus::complete(4).unwrap();
        assert_eq!(
            theta_minus(&k4, &uniform(1), VertexSet::full(4), 1.into()).unwrap(),
            Rational64::zero()
        );
        assert_eq!(
            theta_minus(&k4, &uniform(1), VertexSet::singleton(0), 1.into()).unwrap(),
            Rational64::from_integer(1)
        );
    }

    #[test]
    fn formula_matches_packing_on_named_graphs() {
        for g in [
            corpus::complete(4).unwrap(),
            corpus::complete(6).unwrap(),
            corpus::cycle(5).unwrap(),
            corpus::doubled(&corpus::cycle(4).unwrap()),
        ] {
            assert_eq!(
                nash_williams_formula(&g).unwrap(),
                tree_packing_number(&g),
                "disagreement on {}",
                g.to_text()
            );
        }
        assert_eq!(nash_williams_formula(&corpus::complete(4).unwrap()).unwrap(), 2);
        assert_eq!(nash_williams_formula(&corpus::complete(6).unwrap()).unwrap(), 3);
    }

    #[test]
    fn capacity_errors_are_reported() {
        let big = corpus::cycle(13).unwrap();
        let l = uniform(1);
        // uniform is fine at n = 13 via packing
        assert!(is_partition_connected(&big, &l).unwrap());
        // fractional scale forces enumeration and trips the cap
        assert!(matches!(
            is_partition_connected_scaled(&big, &l, Rational64::new(1, 2)),
            Err(Error::Capacity { .. })
        ));
        // table mode trips the enumeration cap too
        let table = SetFunction::table_from_fn(13, |_| 1).unwrap();
        assert!(matches!(
            is_partition_connected(&big, &table),
            Err(Error::Capacity { .. })
        ));
    }
}
