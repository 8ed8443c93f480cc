//! Independent desk-scale oracles for the integration tests.
//!
//! Everything here recomputes results from first principles with code
//! paths disjoint from the library's: partitions come from a subset
//! recursion rather than growth strings, components from a maximal-set
//! scan rather than merging, connectivity counts from a plain DFS.

#![allow(dead_code)]

use num_rational::Rational64;
use treeconn::corpus;
use treeconn::graph::{MultiGraph, VertexSet};
use treeconn::setfn::SetFunction;

/// All submasks of `x`, including empty and full.
pub fn submasks(x: VertexSet) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let full = x.0;
    let mut sub = full;
    loop {
        out.push(VertexSet(sub));
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & full;
    }
    out
}

/// Every partition of the set `x`, by recursive block selection: the
/// block of the smallest element ranges over all subsets containing it.
pub fn partitions_of_set(x: VertexSet) -> Vec<Vec<VertexSet>> {
    if x.is_empty() {
        return vec![Vec::new()];
    }
    let first = x.min_vertex().unwrap();
    let rest = x.minus(VertexSet::singleton(first));
    let mut result = Vec::new();
    for tail in submasks(rest) {
        let block = VertexSet::singleton(first).union(tail);
        for mut sub in partitions_of_set(x.minus(block)) {
            let mut parts = vec![block];
            parts.append(&mut sub);
            result.push(parts);
        }
    }
    result
}

fn crossing_within(g: &MultiGraph, parts: &[VertexSet]) -> usize {
    g.edges()
        .iter()
        .filter(|e| {
            let pu = parts.iter().position(|p| p.contains(e.u));
            let pv = parts.iter().position(|p| p.contains(e.v));
            match (pu, pv) {
                (Some(a), Some(b)) => a != b,
                _ => false,
            }
        })
        .count()
}

/// Spanning-tree packing value by direct partition enumeration.
pub fn nash_williams_oracle(g: &MultiGraph) -> usize {
    let n = g.vertex_count();
    if n == 1 {
        return usize::MAX;
    }
    let mut best = usize::MAX;
    for parts in partitions_of_set(VertexSet::full(n)) {
        if parts.len() >= 2 {
            let crossing = crossing_within(g, &parts);
            best = best.min(crossing / (parts.len() - 1));
        }
    }
    best
}

/// Is the subgraph induced by `x` `(num/den) * l`-partition-connected?
pub fn induced_pc_oracle(g: &MultiGraph, x: VertexSet, l: &SetFunction, num: i64, den: i64) -> bool {
    let lx = l.value(x);
    partitions_of_set(x).into_iter().all(|parts| {
        if parts.is_empty() {
            return true;
        }
        let crossing = crossing_within(g, &parts) as i64;
        let value_sum: i64 = parts.iter().map(|&a| l.value(a)).sum();
        den * crossing >= num * (value_sum - lx)
    })
}

/// Components as the maximal partition-connected induced subsets, found
/// by scanning subsets in descending size and keeping disjoint hits.
pub fn components_oracle(
    g: &MultiGraph,
    l: &SetFunction,
    num: i64,
    den: i64,
) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut all: Vec<VertexSet> = (1u64..(1u64 << n)).map(VertexSet).collect();
    all.sort_by_key(|x| std::cmp::Reverse(x.len()));
    let mut chosen: Vec<VertexSet> = Vec::new();
    let mut covered = VertexSet::EMPTY;
    for x in all {
        if covered == VertexSet::full(n) {
            break;
        }
        if x.intersects(covered) {
            continue;
        }
        if induced_pc_oracle(g, x, l, num, den) {
            chosen.push(x);
            covered = covered.union(x);
        }
    }
    assert_eq!(covered, VertexSet::full(n), "components must cover");
    chosen.sort_by_key(|p| p.min_vertex());
    chosen
}

/// Deficiency via the component oracle.
pub fn theta_oracle(g: &MultiGraph, l: &SetFunction, num: i64, den: i64) -> Rational64 {
    let parts = components_oracle(g, l, num, den);
    let value_sum: i64 = parts.iter().map(|&a| l.value(a)).sum();
    let crossing = crossing_within(g, &parts) as i64;
    Rational64::new(num * value_sum, den) - Rational64::from_integer(crossing)
}

fn dfs_component_count(adjacency: &[Vec<usize>], removed: u64) -> usize {
    let n = adjacency.len();
    let mut seen = vec![false; n];
    fn dfs(v: usize, adjacency: &[Vec<usize>], removed: u64, seen: &mut [bool]) {
        seen[v] = true;
        for &w in &adjacency[v] {
            if removed >> w & 1 == 0 && !seen[w] {
                dfs(w, adjacency, removed, seen);
            }
        }
    }
    let mut count = 0;
    for v in 0..n {
        if removed >> v & 1 == 0 && !seen[v] {
            count += 1;
            dfs(v, adjacency, removed, &mut seen);
        }
    }
    count
}

/// Toughness by plain enumeration; None means no separator disconnects.
pub fn toughness_oracle(g: &MultiGraph) -> Option<Rational64> {
    let n = g.vertex_count();
    let mut adjacency = vec![Vec::new(); n];
    for e in g.edges() {
        adjacency[e.u].push(e.v);
        adjacency[e.v].push(e.u);
    }
    let mut best: Option<Rational64> = None;
    for mask in 0u64..(1u64 << n) {
        let omega = dfs_component_count(&adjacency, mask);
        if omega >= 2 {
            let ratio = Rational64::new(mask.count_ones() as i64, omega as i64);
            best = Some(match best {
                None => ratio,
                Some(b) => b.min(ratio),
            });
        }
    }
    best
}

/// Maximum crossing count over all c^n class assignments, no pruning.
pub fn max_cut_oracle(g: &MultiGraph, c: usize) -> usize {
    let n = g.vertex_count();
    let mut assignment = vec![0usize; n];
    let mut best = 0;
    loop {
        let crossing = g
            .edges()
            .iter()
            .filter(|e| assignment[e.u] != assignment[e.v])
            .count();
        best = best.max(crossing);
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            assignment[i] += 1;
            if assignment[i] < c {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// The shared small-graph corpus: named families plus seeded random
/// graphs, filtered to at most `max_n` vertices.
pub fn corpus_graphs(max_n: usize) -> Vec<(String, MultiGraph)> {
    let mut graphs: Vec<(String, MultiGraph)> = Vec::new();
    let mut push = |name: String, g: MultiGraph| graphs.push((name, g));

    push("K1".into(), MultiGraph::new(1, Vec::new()).unwrap());
    push("edgeless3".into(), MultiGraph::new(3, Vec::new()).unwrap());
    push(
        "two-triangles".into(),
        MultiGraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap(),
    );
    push("path4".into(), MultiGraph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap());
    push(
        "star5".into(),
        MultiGraph::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap(),
    );
    for n in 2..=8 {
        push(format!("K{n}"), corpus::complete(n).unwrap());
    }
    for n in 3..=8 {
        push(format!("C{n}"), corpus::cycle(n).unwrap());
    }
    for (a, b) in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)] {
        push(format!("K{a}{b}"), corpus::complete_bipartite(a, b).unwrap());
    }
    for n in 3..=6 {
        push(format!("2C{n}"), corpus::doubled(&corpus::cycle(n).unwrap()));
    }
    for n in 4..=5 {
        push(format!("2K{n}"), corpus::doubled(&corpus::complete(n).unwrap()));
    }
    push("2K33".into(), corpus::doubled(&corpus::complete_bipartite(3, 3).unwrap()));
    push("petersen".into(), corpus::petersen());
    for seed in 0..6 {
        let n = 4 + (seed as usize % 5);
        push(
            format!("rand-{n}-{seed}"),
            corpus::random_multigraph(n, n + 3, seed).unwrap(),
        );
    }
    for seed in 0..4 {
        let n = 5 + (seed as usize % 4);
        push(
            format!("tc-{n}-{seed}"),
            corpus::random_tree_connected(n, 1 + seed as usize % 2, 2, seed).unwrap(),
        );
    }
    graphs.retain(|(_, g)| g.vertex_count() <= max_n);
    graphs
}
