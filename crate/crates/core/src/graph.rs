//! Loopless multigraph with stable edge identities.
//!
//! Vertices are dense indices `0..n-1`. Every edge carries an explicit id
//! that survives subgraph extraction, so a factor can always be expressed
//! as a set of parent edge ids. Parallel edges are permitted and counted
//! with multiplicity everywhere; loops are rejected at construction time.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

/// Largest vertex count representable by [`VertexSet`].
pub const MAX_SET_VERTICES: usize = 64;

/// A subset of the vertices `0..n-1`, stored as a bitmask (so `n <= 64`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet(1u64 << v)
    }

    pub fn full(n: usize) -> VertexSet {
        assert!(n <= MAX_SET_VERTICES);
        if n == MAX_SET_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(vertices: I) -> VertexSet {
        let mut mask = 0u64;
        for v in vertices {
            assert!(v < MAX_SET_VERTICES);
            mask |= 1u64 << v;
        }
        VertexSet(mask)
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_SET_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < MAX_SET_VERTICES);
        self.0 |= 1u64 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn minus(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> VertexSet {
        VertexSet::full(n).minus(self)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let v = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                Some(v)
            }
        })
    }

    pub fn min_vertex(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// An ordered list of pairwise-disjoint nonempty vertex sets covering a
/// stated ground set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    parts: Vec<VertexSet>,
    ground: VertexSet,
}

impl Partition {
    /// Validates disjointness, nonemptiness, and exact coverage of `ground`.
    pub fn new(parts: Vec<VertexSet>, ground: VertexSet) -> Result<Partition> {
        let mut seen = VertexSet::EMPTY;
        for part in &parts {
            if part.is_empty() {
                return Err(Error::InvalidPartition("empty part".into()));
            }
            if seen.intersects(*part) {
                return Err(Error::InvalidPartition(format!(
                    "part {part} overlaps earlier parts"
                )));
            }
            seen = seen.union(*part);
        }
        if seen != ground {
            return Err(Error::InvalidPartition(format!(
                "parts cover {seen}, expected {ground}"
            )));
        }
        Ok(Partition { parts, ground })
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn ground(&self) -> VertexSet {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The part containing `v`, if any.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(v))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// An edge of a multigraph. `id` is stable under subgraph extraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn other_end(&self, v: usize) -> usize {
        if self.u == v {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.u == v || self.v == v
    }
}

/// A loopless multigraph on vertices `0..n-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
    degrees: Vec<usize>,
}

impl MultiGraph {
    /// Builds a graph from endpoint pairs; edge ids are assigned `0..m-1`
    /// in input order.
    pub fn new<I>(n: usize, pairs: I) -> Result<MultiGraph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let edges = pairs
            .into_iter()
            .enumerate()
            .map(|(id, (u, v))| Edge { id, u, v })
            .collect();
        Self::from_edges(n, edges)
    }

    /// Builds a graph from explicit edges (ids must be unique but need not
    /// be dense; subgraphs keep their parent's ids).
    pub fn from_edges(n: usize, edges: Vec<Edge>) -> Result<MultiGraph> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut degrees = vec![0usize; n];
        let mut seen_ids = std::collections::HashSet::with_capacity(edges.len());
        for (index, e) in edges.iter().enumerate() {
            if e.u == e.v {
                return Err(Error::LoopEdge {
                    index,
                    vertex: e.u,
                });
            }
            for &end in [e.u, e.v].iter() {
                if end >= n {
                    return Err(Error::VertexOutOfRange { index: end, n });
                }
            }
            if !seen_ids.insert(e.id) {
                return Err(Error::InvalidInput(format!("duplicate edge id {}", e.id)));
            }
            degrees[e.u] += 1;
            degrees[e.v] += 1;
        }
        Ok(MultiGraph { n, edges, degrees })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    pub fn has_edge_id(&self, id: usize) -> bool {
        self.edges.iter().any(|e| e.id == id)
    }

    fn check_set(&self, x: VertexSet, what: &'static str) -> Result<()> {
        if self.n > MAX_SET_VERTICES {
            return Err(Error::Capacity {
                operation: what,
                n: self.n,
                limit: MAX_SET_VERTICES,
            });
        }
        if !x.is_subset_of(VertexSet::full(self.n)) {
            return Err(Error::VertexOutOfRange {
                index: x.iter().find(|&v| v >= self.n).unwrap_or(self.n),
                n: self.n,
            });
        }
        Ok(())
    }

    /// d_G(X): edges with exactly one end in `x`, counted with multiplicity.
    pub fn cut_degree(&self, x: VertexSet) -> Result<usize> {
        self.check_set(x, "cut_degree")?;
        Ok(self
            .edges
            .iter()
            .filter(|e| x.contains(e.u) != x.contains(e.v))
            .count())
    }

    /// e_G(S): edges with both ends in `s`.
    pub fn inside_edge_count(&self, s: VertexSet) -> Result<usize> {
        self.check_set(s, "inside_edge_count")?;
        Ok(self
            .edges
            .iter()
            .filter(|e| s.contains(e.u) && s.contains(e.v))
            .count())
    }

    /// e_G(P): edges joining different parts of `p`, which must partition
    /// the whole vertex set.
    pub fn crossing_edge_count(&self, p: &Partition) -> Result<usize> {
        if self.n > MAX_SET_VERTICES {
            return Err(Error::Capacity {
                operation: "crossing_edge_count",
                n: self.n,
                limit: MAX_SET_VERTICES,
            });
        }
        if p.ground() != VertexSet::full(self.n) {
            return Err(Error::InvalidPartition(format!(
                "partition ground {} does not match vertex set",
                p.ground()
            )));
        }
        let mut part_of = vec![usize::MAX; self.n];
        for (i, part) in p.parts().iter().enumerate() {
            for v in part.iter() {
                part_of[v] = i;
            }
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| part_of[e.u] != part_of[e.v])
            .count())
    }

    /// The spanning subgraph keeping exactly the edges whose ends lie in
    /// different parts. Empty parts are dropped; the remaining parts must
    /// partition the vertex set. Edge ids and multiplicities are retained.
    pub fn induced_cpartite_factor(&self, parts: &[VertexSet]) -> Result<MultiGraph> {
        let nonempty: Vec<VertexSet> = parts.iter().copied().filter(|p| !p.is_empty()).collect();
        if self.n > MAX_SET_VERTICES {
            return Err(Error::Capacity {
                operation: "induced_cpartite_factor",
                n: self.n,
                limit: MAX_SET_VERTICES,
            });
        }
        let partition = Partition::new(nonempty, VertexSet::full(self.n))?;
        let mut class = vec![usize::MAX; self.n];
        for (i, part) in partition.parts().iter().enumerate() {
            for v in part.iter() {
                class[v] = i;
            }
        }
        let kept = self
            .edges
            .iter()
            .copied()
            .filter(|e| class[e.u] != class[e.v])
            .collect();
        MultiGraph::from_edges(self.n, kept)
    }

    /// Spanning subgraph on the given parent edge ids.
    pub fn spanning_subgraph(&self, edge_ids: &[usize]) -> Result<MultiGraph> {
        let mut want: std::collections::HashSet<usize> = edge_ids.iter().copied().collect();
        let kept: Vec<Edge> = self
            .edges
            .iter()
            .copied()
            .filter(|e| want.remove(&e.id))
            .collect();
        if let Some(&missing) = want.iter().next() {
            return Err(Error::UnknownEdgeId { id: missing });
        }
        MultiGraph::from_edges(self.n, kept)
    }

    /// Induced subgraph on `keep`. Vertices are renumbered densely; the
    /// returned map sends new indices to old ones (ascending). Edge ids
    /// are retained.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Result<(MultiGraph, Vec<usize>)> {
        self.check_set(keep, "induced_subgraph")?;
        if keep.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let old_of_new: Vec<usize> = keep.iter().collect();
        let mut new_of_old = vec![usize::MAX; self.n];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep.contains(e.u) && keep.contains(e.v))
            .map(|e| Edge {
                id: e.id,
                u: new_of_old[e.u],
                v: new_of_old[e.v],
            })
            .collect();
        Ok((MultiGraph::from_edges(old_of_new.len(), edges)?, old_of_new))
    }

    /// Induced subgraph after deleting the vertex set `s`.
    pub fn delete_vertices(&self, s: VertexSet) -> Result<(MultiGraph, Vec<usize>)> {
        self.check_set(s, "delete_vertices")?;
        self.induced_subgraph(s.complement(self.n))
    }

    pub fn is_connected(&self) -> bool {
        let mut dsu = DisjointSets::new(self.n);
        for e in &self.edges {
            dsu.union(e.u, e.v);
        }
        dsu.components() == 1
    }

    /// Maximal connected vertex sets, ordered by smallest member.
    pub fn connected_components(&self) -> Result<Partition> {
        if self.n > MAX_SET_VERTICES {
            return Err(Error::Capacity {
                operation: "connected_components",
                n: self.n,
                limit: MAX_SET_VERTICES,
            });
        }
        let mut dsu = DisjointSets::new(self.n);
        for e in &self.edges {
            dsu.union(e.u, e.v);
        }
        let mut sets: std::collections::BTreeMap<usize, VertexSet> = Default::default();
        for v in 0..self.n {
            let root = dsu.find(v);
            sets.entry(root).or_insert(VertexSet::EMPTY).insert(v);
        }
        let mut parts: Vec<VertexSet> = sets.into_values().collect();
        parts.sort_by_key(|p| p.min_vertex());
        Partition::new(parts, VertexSet::full(self.n))
    }

    /// Proper 2-coloring if one exists. Parallel edges never obstruct
    /// bipartiteness.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut color = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// The two color classes of a proper 2-coloring, when one exists.
    /// The second class may be empty (single-vertex graphs).
    pub fn bipartition(&self) -> Result<Option<(VertexSet, VertexSet)>> {
        if self.n > MAX_SET_VERTICES {
            return Err(Error::Capacity {
                operation: "bipartition",
                n: self.n,
                limit: MAX_SET_VERTICES,
            });
        }
        Ok(self.two_coloring().map(|color| {
            let mut a = VertexSet::EMPTY;
            let mut b = VertexSet::EMPTY;
            for (v, &c) in color.iter().enumerate() {
                if c == 0 {
                    a.insert(v);
                } else {
                    b.insert(v);
                }
            }
            (a, b)
        }))
    }

    /// True when every pair of distinct vertices is joined by at least one
    /// edge.
    pub fn is_complete(&self) -> bool {
        if self.n > MAX_SET_VERTICES {
            // adjacency matrix fallback would be easy; nothing at this size
            // ever asks, so stay honest and cheap
            let mut adj = std::collections::HashSet::new();
            for e in &self.edges {
                adj.insert((e.u.min(e.v), e.u.max(e.v)));
            }
            return adj.len() == self.n * (self.n - 1) / 2;
        }
        let mut rows = vec![0u64; self.n];
        for e in &self.edges {
            rows[e.u] |= 1 << e.v;
            rows[e.v] |= 1 << e.u;
        }
        rows.iter()
            .enumerate()
            .all(|(v, &row)| row | (1 << v) == VertexSet::full(self.n).0)
    }

    /// Serializes to the text edge-list format:
    /// `p <n> <m>` then one `e <u> <v>` line per edge (id order).
    pub fn to_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.n, self.edges.len());
        let mut sorted: Vec<&Edge> = self.edges.iter().collect();
        sorted.sort_by_key(|e| e.id);
        for e in sorted {
            out.push_str(&format!("e {} {}\n", e.u, e.v));
        }
        out
    }

    /// Parses the text edge-list format. Lines starting with `#` are
    /// comments; repeated `e u v` lines encode multiplicity.
    pub fn from_text(text: &str) -> Result<MultiGraph> {
        let mut header: Option<(usize, usize)> = None;
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("p") => {
                    if header.is_some() {
                        return Err(Error::Parse(format!("line {}: duplicate header", lineno + 1)));
                    }
                    let n = parse_num(tokens.next(), lineno)?;
                    let m = parse_num(tokens.next(), lineno)?;
                    header = Some((n, m));
                }
                Some("e") => {
                    if header.is_none() {
                        return Err(Error::Parse(format!(
                            "line {}: edge before `p` header",
                            lineno + 1
                        )));
                    }
                    let u = parse_num(tokens.next(), lineno)?;
                    let v = parse_num(tokens.next(), lineno)?;
                    pairs.push((u, v));
                }
                Some(other) => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown record `{other}`",
                        lineno + 1
                    )));
                }
                None => {}
            }
        }
        let (n, m) = header.ok_or_else(|| Error::Parse("missing `p` header".into()))?;
        if pairs.len() != m {
            return Err(Error::Parse(format!(
                "header declares {m} edges, found {}",
                pairs.len()
            )));
        }
        MultiGraph::new(n, pairs)
    }
}

fn parse_num(token: Option<&str>, lineno: usize) -> Result<usize> {
    token
        .ok_or_else(|| Error::Parse(format!("line {}: missing field", lineno + 1)))?
        .parse()
        .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
}
