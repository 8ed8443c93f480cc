//! Deterministic graph generators for campaigns, tests, and benches.
//!
//! Everything random is driven by a ChaCha stream cipher seeded from a
//! `u64`, so a (generator, parameters, seed) triple always reproduces the
//! same graph byte for byte.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::packing::tree_packing_number;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// K_n.
pub fn complete(n: usize) -> Result<MultiGraph> {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            pairs.push((u, v));
        }
    }
    MultiGraph::new(n, pairs)
}

/// K_{a,b} with the left side on `0..a`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<MultiGraph> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidInput(
            "complete bipartite graphs need both sides nonempty".into(),
        ));
    }
    let mut pairs = Vec::new();
    for u in 0..a {
        for v in 0..b {
            pairs.push((u, a + v));
        }
    }
    MultiGraph::new(a + b, pairs)
}

/// C_n for n >= 3.
pub fn cycle(n: usize) -> Result<MultiGraph> {
    if n < 3 {
        return Err(Error::InvalidInput("cycles need at least 3 vertices".into()));
    }
    MultiGraph::new(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// The Petersen graph: outer 5-cycle, inner pentagram, five spokes.
pub fn petersen() -> MultiGraph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
        pairs.push((i, 5 + i));
    }
    MultiGraph::new(10, pairs).expect("static construction")
}

/// Every edge duplicated; new ids are assigned densely.
pub fn doubled(g: &MultiGraph) -> MultiGraph {
    let mut pairs = Vec::new();
    for e in g.edges() {
        pairs.push((e.u, e.v));
        pairs.push((e.u, e.v));
    }
    MultiGraph::new(g.vertex_count(), pairs).expect("doubling preserves validity")
}

/// `m` uniformly random endpoint pairs (parallel edges allowed, loops
/// excluded by construction).
pub fn random_multigraph(n: usize, m: usize, seed: u64) -> Result<MultiGraph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n == 1 && m > 0 {
        return Err(Error::InvalidInput(
            "a single vertex admits no loopless edges".into(),
        ));
    }
    let mut r = rng(seed);
    let pairs = (0..m)
        .map(|_| {
            let u = r.random_range(0..n);
            let w = r.random_range(0..n - 1);
            (u, if w >= u { w + 1 } else { w })
        })
        .collect::<Vec<_>>();
    MultiGraph::new(n, pairs)
}

/// A uniformly random spanning tree of the complete graph on `n` vertices
/// (loop-erased random walk).
fn wilson_tree_complete(n: usize, r: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let step = |v: usize, r: &mut ChaCha8Rng| {
        let w = r.random_range(0..n - 1);
        if w >= v {
            w + 1
        } else {
            w
        }
    };
    wilson(n, step, r)
}

/// A uniformly random spanning tree of K_{a,b} (left side `0..a`).
fn wilson_tree_bipartite(a: usize, b: usize, r: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let step = |v: usize, r: &mut ChaCha8Rng| {
        if v < a {
            a + r.random_range(0..b)
        } else {
            r.random_range(0..a)
        }
    };
    wilson(a + b, step, r)
}

fn wilson<F>(n: usize, mut step: F, r: &mut ChaCha8Rng) -> Vec<(usize, usize)>
where
    F: FnMut(usize, &mut ChaCha8Rng) -> usize,
{
    let mut in_tree = vec![false; n];
    let mut next = vec![usize::MAX; n];
    let root = r.random_range(0..n);
    in_tree[root] = true;
    for start in 0..n {
        let mut v = start;
        while !in_tree[v] {
            next[v] = step(v, r);
            v = next[v];
        }
        let mut v = start;
        while !in_tree[v] {
            in_tree[v] = true;
            v = next[v];
        }
    }
    // every vertex joined the tree pointing at an already-absorbed vertex,
    // so (v, next[v]) over v != root is exactly the tree
    (0..n).filter(|&v| v != root).map(|v| (v, next[v])).collect()
}

/// Union of `m` uniformly random spanning trees of K_n plus `extra`
/// random edges. The result always packs at least `m` trees.
pub fn random_tree_connected(n: usize, m: usize, extra: usize, seed: u64) -> Result<MultiGraph> {
    if n < 2 {
        return Err(Error::InvalidInput(
            "tree-connected generation needs at least 2 vertices".into(),
        ));
    }
    let mut r = rng(seed);
    let mut pairs = Vec::new();
    for _ in 0..m {
        pairs.extend(wilson_tree_complete(n, &mut r));
    }
    for _ in 0..extra {
        let u = r.random_range(0..n);
        let w = r.random_range(0..n - 1);
        pairs.push((u, if w >= u { w + 1 } else { w }));
    }
    let g = MultiGraph::new(n, pairs)?;
    assert!(
        tree_packing_number(&g) >= m,
        "union of {m} spanning trees must pack {m} trees"
    );
    Ok(g)
}

/// Union of `m` uniformly random spanning trees of K_{a,b} plus `extra`
/// random crossing edges: a bipartite graph packing at least `m` trees.
pub fn random_bipartite_tree_connected(
    a: usize,
    b: usize,
    m: usize,
    extra: usize,
    seed: u64,
) -> Result<MultiGraph> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidInput(
            "bipartite generation needs both sides nonempty".into(),
        ));
    }
    let mut r = rng(seed);
    let mut pairs = Vec::new();
    for _ in 0..m {
        pairs.extend(wilson_tree_bipartite(a, b, &mut r));
    }
    for _ in 0..extra {
        let u = r.random_range(0..a);
        let v = a + r.random_range(0..b);
        pairs.push((u, v));
    }
    let g = MultiGraph::new(a + b, pairs)?;
    assert!(tree_packing_number(&g) >= m);
    debug_assert!(g.two_coloring().is_some());
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_edge_counts() {
        assert_eq!(complete(4).unwrap().edge_count(), 6);
        assert_eq!(complete_bipartite(3, 3).unwrap().edge_count(), 9);
        assert_eq!(cycle(5).unwrap().edge_count(), 5);
        assert_eq!(petersen().edge_count(), 15);
    }

    #[test]
    fn doubling_duplicates_every_edge() {
        let g = doubled(&cycle(4).unwrap());
        assert_eq!(g.edge_count(), 8);
        for v in 0..4 {
            assert_eq!(g.degree(v), 4);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_tree_connected(6, 2, 3, 7).unwrap();
        let b = random_tree_connected(6, 2, 3, 7).unwrap();
        assert_eq!(a, b);
        let c = random_tree_connected(6, 2, 3, 8).unwrap();
        assert_ne!(a, c, "different seeds should differ on 6 vertices");
    }

    #[test]
    fn tree_connected_generator_packs_m_trees() {
        for seed in 0..5 {
            let g = random_tree_connected(6, 2, 0, seed).unwrap();
            assert!(tree_packing_number(&g) >= 2);
            assert_eq!(g.edge_count(), 10);
        }
    }

    #[test]
    fn bipartite_generator_is_bipartite_and_packs() {
        for seed in 0..5 {
            let g = random_bipartite_tree_connected(3, 4, 3, 1, seed).unwrap();
            assert!(g.two_coloring().is_some());
            assert!(tree_packing_number(&g) >= 3);
        }
    }

    #[test]
    fn random_multigraph_respects_bounds() {
        let g = random_multigraph(5, 12, 3).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert!(random_multigraph(1, 1, 0).is_err());
    }
}
