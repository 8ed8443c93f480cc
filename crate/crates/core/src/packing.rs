//! Edge-disjoint spanning tree packing by incremental matroid union.
//!
//! Elements are inserted one at a time; an element that cannot extend any
//! forest directly is routed through a breadth-first exchange search that
//! swaps it in along an augmenting sequence. After all elements have been
//! attempted the family has maximum total size, so the packing number and
//! a dual certificate (a partition violating the cut count) both fall out
//! of the final state.

use std::collections::VecDeque;

use serde::Serialize;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::{Edge, MultiGraph};

/// A family of pairwise edge-disjoint spanning trees, each given by parent
/// edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PackingWitness {
    pub trees: Vec<Vec<usize>>,
}

impl PackingWitness {
    /// Re-checks the witness against `g` from scratch: every tree must be
    /// spanning and acyclic with `n - 1` edges of `g`, and the trees must
    /// be pairwise edge-disjoint.
    pub fn verify(&self, g: &MultiGraph) -> Result<()> {
        let n = g.vertex_count();
        let mut used = std::collections::HashSet::new();
        for (t, tree) in self.trees.iter().enumerate() {
            if tree.len() + 1 != n {
                return Err(Error::InvalidInput(format!(
                    "tree {t} has {} edges, expected {}",
                    tree.len(),
                    n - 1
                )));
            }
            let sub = g.spanning_subgraph(tree)?;
            let mut dsu = DisjointSets::new(n);
            for e in sub.edges() {
                if !dsu.union(e.u, e.v) {
                    return Err(Error::InvalidInput(format!("tree {t} contains a cycle")));
                }
            }
            if dsu.components() != 1 {
                return Err(Error::InvalidInput(format!("tree {t} is not spanning")));
            }
            for &id in tree {
                if !used.insert(id) {
                    return Err(Error::InvalidInput(format!(
                        "edge id {id} appears in two trees"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Incremental forest family over a fixed ground set of edges.
struct ForestFamily<'a> {
    n: usize,
    edges: &'a [Edge],
    /// forest index holding each ground element, if any
    home: Vec<Option<usize>>,
    /// per forest, per vertex: incident (element, other endpoint) pairs
    adjacency: Vec<Vec<Vec<(usize, usize)>>>,
}

impl<'a> ForestFamily<'a> {
    fn new(n: usize, edges: &'a [Edge]) -> Self {
        ForestFamily {
            n,
            edges,
            home: vec![None; edges.len()],
            adjacency: Vec::new(),
        }
    }

    fn forest_count(&self) -> usize {
        self.adjacency.len()
    }

    fn add_forest(&mut self) {
        self.adjacency.push(vec![Vec::new(); self.n]);
    }

    fn rank(&self) -> usize {
        self.home.iter().filter(|h| h.is_some()).count()
    }

    fn unused(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&x| self.home[x].is_none())
            .collect()
    }

    /// Elements on the tree path between `from` and `to` in forest `f`,
    /// or None when the endpoints are in different trees.
    fn path_elements(&self, f: usize, from: usize, to: usize) -> Option<Vec<usize>> {
        if from == to {
            return Some(Vec::new());
        }
        let adj = &self.adjacency[f];
        let mut via: Vec<Option<(usize, usize)>> = vec![None; self.n];
        let mut queue = VecDeque::from([from]);
        via[from] = Some((usize::MAX, from));
        while let Some(v) = queue.pop_front() {
            for &(element, w) in &adj[v] {
                if via[w].is_none() {
                    via[w] = Some((element, v));
                    if w == to {
                        let mut path = Vec::new();
                        let mut cur = to;
                        while cur != from {
                            let (el, prev) = via[cur].unwrap();
                            path.push(el);
                            cur = prev;
                        }
                        return Some(path);
                    }
                    queue.push_back(w);
                }
            }
        }
        None
    }

    fn place(&mut self, element: usize, f: usize) {
        let e = self.edges[element];
        debug_assert!(
            self.path_elements(f, e.u, e.v).is_none(),
            "placement must keep the forest acyclic"
        );
        self.adjacency[f][e.u].push((element, e.v));
        self.adjacency[f][e.v].push((element, e.u));
        self.home[element] = Some(f);
    }

    fn remove(&mut self, element: usize, f: usize) {
        let e = self.edges[element];
        self.adjacency[f][e.u].retain(|&(el, _)| el != element);
        self.adjacency[f][e.v].retain(|&(el, _)| el != element);
        self.home[element] = None;
    }

    /// Attempts to bring `start` into the family, exchanging elements
    /// along a shortest augmenting sequence. Returns true on success.
    fn try_insert(&mut self, start: usize) -> bool {
        if self.forest_count() == 0 {
            return false;
        }
        let mut parent: Vec<Option<usize>> = vec![None; self.edges.len()];
        let mut visited = vec![false; self.edges.len()];
        visited[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            let e = self.edges[cur];
            for f in 0..self.forest_count() {
                if Some(f) == self.home[cur] {
                    continue;
                }
                match self.path_elements(f, e.u, e.v) {
                    None => {
                        self.apply_exchanges(cur, f, &parent);
                        return true;
                    }
                    Some(cycle) => {
                        for y in cycle {
                            if !visited[y] {
                                visited[y] = true;
                                parent[y] = Some(cur);
                                queue.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        false
    }

    /// Walks the parent chain back to the source, moving each element into
    /// the slot vacated by its child.
    fn apply_exchanges(&mut self, leaf: usize, free_forest: usize, parent: &[Option<usize>]) {
        let mut moving = leaf;
        let mut destination = free_forest;
        loop {
            let old_home = self.home[moving];
            if let Some(h) = old_home {
                self.remove(moving, h);
            }
            self.place(moving, destination);
            match (parent[moving], old_home) {
                (None, _) => break,
                (Some(p), Some(h)) => {
                    moving = p;
                    destination = h;
                }
                (Some(_), None) => unreachable!("only the source element is homeless"),
            }
        }
    }

    /// Marks everything reachable from `start` in the exchange graph.
    /// Called on the final (maximum) state, where no augmentation exists.
    fn mark_reachable(&self, start: usize, visited: &mut [bool]) {
        let mut queue = VecDeque::new();
        if !visited[start] {
            visited[start] = true;
            queue.push_back(start);
        }
        while let Some(cur) = queue.pop_front() {
            let e = self.edges[cur];
            for f in 0..self.forest_count() {
                if Some(f) == self.home[cur] {
                    continue;
                }
                let cycle = self
                    .path_elements(f, e.u, e.v)
                    .expect("maximum family admits no augmentation");
                for y in cycle {
                    if !visited[y] {
                        visited[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
    }

    /// The Nash-Williams dual certificate once the family is maximum and
    /// short of `m * (n - 1)`: components of the subgraph spanned by every
    /// element reachable from an unused one. The certificate partition `P`
    /// satisfies `e_G(P) < m * (|P| - 1)`.
    fn violating_partition(&self) -> Vec<Vec<usize>> {
        let mut visited = vec![false; self.edges.len()];
        for x in self.unused() {
            self.mark_reachable(x, &mut visited);
        }
        let mut dsu = DisjointSets::new(self.n);
        for (x, &seen) in visited.iter().enumerate() {
            if seen {
                let e = self.edges[x];
                dsu.union(e.u, e.v);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..self.n {
            groups.entry(dsu.find(v)).or_default().push(v);
        }
        groups.into_values().collect()
    }

    fn trees(&self) -> Vec<Vec<usize>> {
        let mut trees = vec![Vec::new(); self.forest_count()];
        for (x, home) in self.home.iter().enumerate() {
            if let Some(f) = *home {
                trees[f].push(self.edges[x].id);
            }
        }
        for tree in &mut trees {
            tree.sort_unstable();
        }
        trees
    }
}

fn run_family(g: &MultiGraph, m: usize) -> ForestFamily<'_> {
    let mut family = ForestFamily::new(g.vertex_count(), g.edges());
    for _ in 0..m {
        family.add_forest();
        for x in family.unused() {
            family.try_insert(x);
        }
    }
    family
}

/// True when `g` contains `m` edge-disjoint spanning trees.
pub fn has_tree_packing(g: &MultiGraph, m: usize) -> bool {
    let n = g.vertex_count();
    if m == 0 || n == 1 {
        return true;
    }
    if g.edge_count() < m * (n - 1) {
        return false;
    }
    run_family(g, m).rank() == m * (n - 1)
}

/// Maximum number of edge-disjoint spanning trees. Single-vertex graphs
/// are m-tree-connected for every m and report `usize::MAX`.
pub fn tree_packing_number(g: &MultiGraph) -> usize {
    let n = g.vertex_count();
    if n == 1 {
        return usize::MAX;
    }
    let ceiling = g.edge_count() / (n - 1);
    let mut family = ForestFamily::new(n, g.edges());
    let mut best = 0;
    for m in 1..=ceiling {
        family.add_forest();
        for x in family.unused() {
            family.try_insert(x);
        }
        if family.rank() == m * (n - 1) {
            best = m;
        } else {
            break;
        }
    }
    best
}

/// Extracts `m` pairwise edge-disjoint spanning trees, or fails with the
/// dual certificate partition.
pub fn extract_spanning_trees(g: &MultiGraph, m: usize) -> Result<PackingWitness> {
    let n = g.vertex_count();
    if n == 1 || m == 0 {
        return Ok(PackingWitness {
            trees: vec![Vec::new(); m],
        });
    }
    let family = run_family(g, m);
    if family.rank() == m * (n - 1) {
        let witness = PackingWitness {
            trees: family.trees(),
        };
        debug_assert!(witness.verify(g).is_ok());
        Ok(witness)
    } else {
        let witness = family.violating_partition();
        debug_assert!(violates_tree_count(g, m, &witness));
        Err(Error::NotTreeConnected {
            required: m,
            witness,
        })
    }
}

/// Checks a dual certificate: `e_G(P) < m * (|P| - 1)`.
pub fn violates_tree_count(g: &MultiGraph, m: usize, partition: &[Vec<usize>]) -> bool {
    let mut part_of = vec![usize::MAX; g.vertex_count()];
    for (i, part) in partition.iter().enumerate() {
        for &v in part {
            part_of[v] = i;
        }
    }
    if part_of.iter().any(|&p| p == usize::MAX) {
        return false;
    }
    let crossing = g
        .edges()
        .iter()
        .filter(|e| part_of[e.u] != part_of[e.v])
        .count();
    crossing < m * (partition.len() - 1)
}

/// A spanning subgraph that is m-tree-connected and loses the property on
/// deletion of any edge; it has exactly `m * (n - 1)` edges. Edges are
/// attacked in descending order of current endpoint degree sum, which
/// drives some vertex down to degree at most `2m`.
pub fn minimally_tree_connected(g: &MultiGraph, m: usize) -> Result<MultiGraph> {
    let n = g.vertex_count();
    if n == 1 {
        return MultiGraph::from_edges(1, Vec::new());
    }
    if !has_tree_packing(g, m) {
        return match extract_spanning_trees(g, m) {
            Err(e) => Err(e),
            Ok(_) => unreachable!("packing test and extraction disagree"),
        };
    }
    let mut current = g.clone();
    let target = m * (n - 1);
    while current.edge_count() > target {
        let mut order: Vec<usize> = (0..current.edge_count()).collect();
        order.sort_by_key(|&i| {
            let e = current.edges()[i];
            let weight = current.degree(e.u) + current.degree(e.v);
            (std::cmp::Reverse(weight), e.id)
        });
        let mut deleted = false;
        for i in order {
            let id = current.edges()[i].id;
            let remaining: Vec<usize> = current.edge_ids().filter(|&x| x != id).collect();
            let candidate = current.spanning_subgraph(&remaining)?;
            if has_tree_packing(&candidate, m) {
                current = candidate;
                deleted = true;
                break;
            }
        }
        if !deleted {
            break;
        }
    }
    debug_assert_eq!(current.edge_count(), target);
    debug_assert!((0..n).any(|v| current.degree(v) <= 2 * m));
    Ok(current)
}
