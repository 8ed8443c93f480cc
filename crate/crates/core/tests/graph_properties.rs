//! Structural invariants of the multigraph primitives.

mod common;

use proptest::prelude::*;
use treeconn::graph::{MultiGraph, Partition, VertexSet};

fn arb_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = MultiGraph> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n - 1), 0..=max_m).prop_map(move |raw| {
            let pairs = raw
                .into_iter()
                .map(|(u, w)| (u, if w >= u { w + 1 } else { w }));
            MultiGraph::new(n, pairs).expect("no loops by construction")
        })
    })
}

fn arb_assignment(g: &MultiGraph, blocks: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..blocks, g.vertex_count())
}

proptest! {
    #[test]
    fn cut_degree_complement_symmetry(g in arb_graph(7, 14), mask in any::<u64>()) {
        let n = g.vertex_count();
        let x = VertexSet(mask & VertexSet::full(n).0);
        prop_assert_eq!(
            g.cut_degree(x).unwrap(),
            g.cut_degree(x.complement(n)).unwrap()
        );
    }

    #[test]
    fn crossing_count_is_half_the_cut_sum(g in arb_graph(7, 14), raw in proptest::collection::vec(0..4usize, 7)) {
        let n = g.vertex_count();
        let mut parts_map = vec![VertexSet::EMPTY; 4];
        for v in 0..n {
            parts_map[raw[v]].insert(v);
        }
        let parts: Vec<VertexSet> = parts_map.into_iter().filter(|p| !p.is_empty()).collect();
        let partition = Partition::new(parts.clone(), VertexSet::full(n)).unwrap();
        let crossing = g.crossing_edge_count(&partition).unwrap();
        let cut_sum: usize = parts.iter().map(|&a| g.cut_degree(a).unwrap()).sum();
        prop_assert_eq!(2 * crossing, cut_sum);
    }

    #[test]
    fn cpartite_factor_conserves_multiplicity(g in arb_graph(7, 14), raw in proptest::collection::vec(0..3usize, 7)) {
        let n = g.vertex_count();
        let mut parts = vec![VertexSet::EMPTY; 3];
        for v in 0..n {
            parts[raw[v]].insert(v);
        }
        let factor = g.induced_cpartite_factor(&parts).unwrap();
        let inside: usize = parts
            .iter()
            .filter(|p| !p.is_empty())
            .map(|&p| g.inside_edge_count(p).unwrap())
            .sum();
        prop_assert_eq!(factor.edge_count() + inside, g.edge_count());
        // retained ids are a subset of the parent's
        for e in factor.edges() {
            prop_assert!(g.has_edge_id(e.id));
        }
    }

    #[test]
    fn all_singleton_factor_is_identity(g in arb_graph(6, 12)) {
        let parts: Vec<VertexSet> = (0..g.vertex_count()).map(VertexSet::singleton).collect();
        prop_assert_eq!(g.induced_cpartite_factor(&parts).unwrap(), g);
    }

    #[test]
    fn text_round_trip(g in arb_graph(7, 14)) {
        let text = g.to_text();
        let back = MultiGraph::from_text(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_text(), text);
    }
}

#[test]
fn component_count_matches_oracle_on_corpus() {
    for (name, g) in common::corpus_graphs(10) {
        let components = g.connected_components().unwrap();
        let mut adjacency = vec![Vec::new(); g.vertex_count()];
        for e in g.edges() {
            adjacency[e.u].push(e.v);
            adjacency[e.v].push(e.u);
        }
        let omega = {
            // count via the oracle's DFS with nothing removed
            let mut seen = vec![false; g.vertex_count()];
            let mut count = 0;
            for start in 0..g.vertex_count() {
                if seen[start] {
                    continue;
                }
                count += 1;
                let mut stack = vec![start];
                seen[start] = true;
                while let Some(v) = stack.pop() {
                    for &w in &adjacency[v] {
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
            }
            count
        };
        assert_eq!(components.len(), omega, "{name}");
    }
}
