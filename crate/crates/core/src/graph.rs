//! Undirected multigraphs with self-loops, multiplicities and vertex labels.
//!
//! A [`MultiGraph`] stores its edge multiset in two layers: an explicit map
//! from unordered pairs to multiplicities, and a list of disjoint contiguous
//! *clique blocks*. A block `[s, e)` contributes multiplicity 1 to every pair
//! of distinct vertices inside it. Realized power-law graphs consist mostly of
//! large cliques, and the block layer keeps them linear in size. Every query
//! (degrees, multiplicities, independence, edge iteration, equality) sees the
//! combined multiset, so the split is invisible to callers.

use std::collections::BTreeMap;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{PlgError, Result};

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", from = "Vec<usize>")]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(iter: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.members
    }

    /// Errors if any member is not a vertex of a graph with `vertex_count` vertices.
    pub fn validate(&self, vertex_count: usize) -> Result<()> {
        match self.members.last() {
            Some(&v) if v >= vertex_count => Err(PlgError::input(format!(
                "vertex {v} out of range for graph with {vertex_count} vertices"
            ))),
            _ => Ok(()),
        }
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.members
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

#[derive(Debug, Clone, Default)]
pub struct MultiGraph {
    vertex_count: usize,
    explicit: BTreeMap<(usize, usize), u64>,
    blocks: Vec<Range<usize>>,
    labels: BTreeMap<usize, String>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize) -> Self {
        MultiGraph {
            vertex_count,
            ..Default::default()
        }
    }

    /// Simple graph from a list of distinct edges.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = MultiGraph::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v, 1)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = MultiGraph::new(n);
        g.add_clique_block(0..n).expect("fresh graph");
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = MultiGraph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n, 1).expect("valid cycle edge");
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Appends `k` isolated vertices and returns their id range.
    pub fn add_vertices(&mut self, k: usize) -> Range<usize> {
        let start = self.vertex_count;
        self.vertex_count += k;
        start..self.vertex_count
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(PlgError::input(format!(
                "vertex {v} out of range for graph with {} vertices",
                self.vertex_count
            )))
        }
    }

    /// Adds `mult` parallel copies of edge `{u, v}` (a self-loop when `u == v`).
    pub fn add_edge(&mut self, u: usize, v: usize, mult: u64) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if mult == 0 {
            return Err(PlgError::input("edge multiplicity must be positive"));
        }
        let key = (u.min(v), u.max(v));
        *self.explicit.entry(key).or_insert(0) += mult;
        Ok(())
    }

    /// Makes the contiguous range a clique (multiplicity 1 on every inner pair).
    /// Blocks must not overlap existing blocks.
    pub fn add_clique_block(&mut self, range: Range<usize>) -> Result<()> {
        if range.len() < 2 {
            return Ok(());
        }
        if range.end > self.vertex_count {
            return Err(PlgError::input(format!(
                "clique block {range:?} exceeds vertex count {}",
                self.vertex_count
            )));
        }
        let pos = self.blocks.partition_point(|b| b.start < range.start);
        let clash_prev = pos > 0 && self.blocks[pos - 1].end > range.start;
        let clash_next = pos < self.blocks.len() && self.blocks[pos].start < range.end;
        if clash_prev || clash_next {
            return Err(PlgError::input(format!(
                "clique block {range:?} overlaps an existing block"
            )));
        }
        self.blocks.insert(pos, range);
        Ok(())
    }

    pub fn set_label(&mut self, v: usize, tag: impl Into<String>) -> Result<()> {
        self.check_vertex(v)?;
        let tag = tag.into();
        if tag.is_empty() || !tag.chars().all(|c| c.is_ascii_graphic()) {
            return Err(PlgError::input(format!("invalid label tag {tag:?}")));
        }
        self.labels.insert(v, tag);
        Ok(())
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    /// Vertices carrying exactly `tag`, ascending.
    pub fn vertices_labelled(&self, tag: &str) -> Vec<usize> {
        self.labels
            .iter()
            .filter(|(_, t)| t.as_str() == tag)
            .map(|(&v, _)| v)
            .collect()
    }

    fn block_of(&self, v: usize) -> Option<&Range<usize>> {
        let pos = self.blocks.partition_point(|b| b.start <= v);
        if pos == 0 {
            return None;
        }
        let b = &self.blocks[pos - 1];
        b.contains(&v).then_some(b)
    }

    fn same_block(&self, u: usize, v: usize) -> bool {
        u != v && self.block_of(u).is_some_and(|b| b.contains(&v))
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        let key = (u.min(v), u.max(v));
        self.explicit.get(&key).copied().unwrap_or(0) + u64::from(self.same_block(u, v))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.multiplicity(u, v) > 0
    }

    pub fn has_self_loop(&self, v: usize) -> bool {
        self.explicit.contains_key(&(v, v))
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.vertex_count];
        for (&(u, v), &m) in &self.explicit {
            if u == v {
                deg[u] += 2 * m;
            } else {
                deg[u] += m;
                deg[v] += m;
            }
        }
        for b in &self.blocks {
            let inner = (b.len() - 1) as u64;
            for d in &mut deg[b.clone()] {
                *d += inner;
            }
        }
        deg
    }

    pub fn degree(&self, v: usize) -> u64 {
        let mut d: u64 = self
            .explicit
            .range((v, v)..=(v, usize::MAX))
            .map(|(&(_, w), &m)| if w == v { 2 * m } else { m })
            .sum();
        // pairs (u, v) with u < v are keyed under u; scan those too
        d += self
            .explicit
            .range(..(v, 0))
            .filter(|(&(_, w), _)| w == v)
            .map(|(_, &m)| m)
            .sum::<u64>();
        if let Some(b) = self.block_of(v) {
            d += (b.len() - 1) as u64;
        }
        d
    }

    pub fn max_degree(&self) -> u64 {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Degrees sorted non-decreasing.
    pub fn degree_sequence(&self) -> Vec<u64> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    /// Sum of all multiplicities, counting each self-loop once.
    pub fn total_multiplicity(&self) -> u64 {
        let block: u64 = self
            .blocks
            .iter()
            .map(|b| (b.len() * (b.len() - 1) / 2) as u64)
            .sum();
        self.explicit.values().sum::<u64>() + block
    }

    pub fn distinct_edge_count(&self) -> usize {
        let block: usize = self.blocks.iter().map(|b| b.len() * (b.len() - 1) / 2).sum();
        let explicit_only = self
            .explicit
            .keys()
            .filter(|&&(u, v)| !self.same_block(u, v))
            .count();
        block + explicit_only
    }

    /// True when every multiplicity is 1 and there are no self-loops.
    pub fn is_simple(&self) -> bool {
        self.explicit
            .iter()
            .all(|(&(u, v), &m)| u != v && m == 1 && !self.same_block(u, v))
    }

    /// All distinct edges `(u, v, multiplicity)` with `u <= v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        let mut explicit = self.explicit.iter().map(|(&(u, v), &m)| (u, v, m)).peekable();
        let mut block = self
            .blocks
            .iter()
            .flat_map(|b| {
                let b = b.clone();
                b.clone()
                    .flat_map(move |u| (u + 1..b.end).map(move |v| (u, v, 1u64)))
            })
            .peekable();
        std::iter::from_fn(move || match (explicit.peek(), block.peek()) {
            (None, None) => None,
            (Some(_), None) => explicit.next(),
            (None, Some(_)) => block.next(),
            (Some(&(eu, ev, em)), Some(&(bu, bv, _))) => {
                if (eu, ev) < (bu, bv) {
                    explicit.next()
                } else if (bu, bv) < (eu, ev) {
                    block.next()
                } else {
                    explicit.next();
                    block.next();
                    Some((eu, ev, em + 1))
                }
            }
        })
    }

    /// Distinct-neighbour index (self excluded) for repeated adjacency queries.
    pub fn adjacency(&self) -> Adjacency<'_> {
        let mut explicit = vec![Vec::new(); self.vertex_count];
        let mut loops = vec![false; self.vertex_count];
        for &(u, v) in self.explicit.keys() {
            if u == v {
                loops[u] = true;
            } else if !self.same_block(u, v) {
                explicit[u].push(v);
                explicit[v].push(u);
            }
        }
        for list in &mut explicit {
            list.sort_unstable();
        }
        Adjacency {
            graph: self,
            explicit,
            loops,
        }
    }

    /// True iff the (distinct) members are pairwise adjacent.
    pub fn is_clique(&self, members: &[usize]) -> Result<bool> {
        for &v in members {
            self.check_vertex(v)?;
        }
        if let Some(b) = members.first().and_then(|&v| self.block_of(v)) {
            if members.iter().all(|v| b.contains(v)) {
                let mut sorted = members.to_vec();
                sorted.sort_unstable();
                sorted.dedup();
                return Ok(sorted.len() == members.len());
            }
        }
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if u == v || !self.has_edge(u, v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff no edge joins two distinct members and no member has a self-loop.
    pub fn is_independent(&self, s: &VertexSet) -> Result<bool> {
        s.validate(self.vertex_count)?;
        if s.iter().any(|v| self.has_self_loop(v)) {
            return Ok(false);
        }
        let members = s.as_slice();
        // one member per block at most
        let mut last_block: Option<usize> = None;
        for &v in members {
            if let Some(b) = self.block_of(v) {
                if last_block == Some(b.start) {
                    return Ok(false);
                }
                last_block = Some(b.start);
            }
        }
        let k = members.len();
        if k * k <= self.explicit.len() {
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    if self.explicit.contains_key(&(u, v)) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        } else {
            Ok(!self
                .explicit
                .keys()
                .any(|&(u, v)| u != v && s.contains(u) && s.contains(v)))
        }
    }

    /// Disjoint union: appends `other` with ids shifted by the current vertex
    /// count; returns the id range the appended vertices occupy.
    pub fn append(&mut self, other: &MultiGraph) -> Range<usize> {
        let off = self.vertex_count;
        self.vertex_count += other.vertex_count;
        for (&(u, v), &m) in &other.explicit {
            *self.explicit.entry((u + off, v + off)).or_insert(0) += m;
        }
        for b in &other.blocks {
            self.blocks.push(b.start + off..b.end + off);
        }
        self.blocks.sort_by_key(|b| b.start);
        for (&v, t) in &other.labels {
            self.labels.insert(v + off, t.clone());
        }
        off..self.vertex_count
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in the given order.
    /// Block structure is flattened into explicit edges.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<MultiGraph> {
        let mut index = vec![usize::MAX; self.vertex_count];
        for (i, &v) in keep.iter().enumerate() {
            self.check_vertex(v)?;
            if index[v] != usize::MAX {
                return Err(PlgError::input(format!("vertex {v} listed twice")));
            }
            index[v] = i;
        }
        let mut sub = MultiGraph::new(keep.len());
        for (&(u, v), &m) in &self.explicit {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                sub.add_edge(index[u], index[v], m)?;
            }
        }
        for b in &self.blocks {
            let inside: Vec<usize> = b.clone().filter(|&v| index[v] != usize::MAX).collect();
            for (i, &u) in inside.iter().enumerate() {
                for &v in &inside[i + 1..] {
                    sub.add_edge(index[u], index[v], 1)?;
                }
            }
        }
        for (&v, t) in &self.labels {
            if index[v] != usize::MAX {
                sub.labels.insert(index[v], t.clone());
            }
        }
        Ok(sub)
    }
}

impl PartialEq for MultiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count
            && self.labels == other.labels
            && self.edges().eq(other.edges())
    }
}

impl Eq for MultiGraph {}

/// Neighbour index built by [`MultiGraph::adjacency`].
pub struct Adjacency<'g> {
    graph: &'g MultiGraph,
    explicit: Vec<Vec<usize>>,
    loops: Vec<bool>,
}

impl Adjacency<'_> {
    pub fn has_loop(&self, v: usize) -> bool {
        self.loops[v]
    }

    /// Distinct neighbours of `v` other than `v`, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = self.explicit[v].clone();
        if let Some(b) = self.graph.block_of(v) {
            out.extend(b.clone().filter(|&w| w != v));
            out.sort_unstable();
        }
        out
    }

    pub fn neighbor_count(&self, v: usize) -> usize {
        self.explicit[v].len() + self.graph.block_of(v).map_or(0, |b| b.len() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> MultiGraph {
        MultiGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn degree_sequence_examples() {
        assert_eq!(triangle().degree_sequence(), vec![2, 2, 2]);

        let mut loop1 = MultiGraph::new(1);
        loop1.add_edge(0, 0, 1).unwrap();
        assert_eq!(loop1.degree_sequence(), vec![2]);

        let mut triple = MultiGraph::new(2);
        triple.add_edge(0, 1, 3).unwrap();
        assert_eq!(triple.degree_sequence(), vec![3, 3]);
    }

    #[test]
    fn independence_examples() {
        let k3 = triangle();
        assert!(k3.is_independent(&VertexSet::new([0])).unwrap());
        assert!(!k3.is_independent(&VertexSet::new([0, 1])).unwrap());

        let mut looped = MultiGraph::new(2);
        looped.add_edge(0, 0, 1).unwrap();
        assert!(!looped.is_independent(&VertexSet::new([0])).unwrap());
        assert!(looped.is_independent(&VertexSet::new([1])).unwrap());

        assert!(k3.is_independent(&VertexSet::new([5])).is_err());
    }

    #[test]
    fn blocks_behave_like_explicit_cliques() {
        let mut blocked = MultiGraph::new(6);
        blocked.add_clique_block(1..5).unwrap();
        blocked.add_edge(2, 3, 2).unwrap();
        blocked.add_edge(0, 5, 1).unwrap();
        blocked.add_edge(4, 4, 1).unwrap();

        let mut flat = MultiGraph::new(6);
        for u in 1..5 {
            for v in u + 1..5 {
                flat.add_edge(u, v, 1).unwrap();
            }
        }
        flat.add_edge(2, 3, 2).unwrap();
        flat.add_edge(0, 5, 1).unwrap();
        flat.add_edge(4, 4, 1).unwrap();

        assert_eq!(blocked, flat);
        assert_eq!(blocked.degrees(), flat.degrees());
        for v in 0..6 {
            assert_eq!(blocked.degree(v), flat.degree(v));
        }
        assert_eq!(blocked.multiplicity(3, 2), 3);
        assert_eq!(blocked.distinct_edge_count(), flat.distinct_edge_count());
        assert_eq!(blocked.total_multiplicity(), flat.total_multiplicity());
        assert!(!blocked.is_simple());
        assert!(!blocked.is_independent(&VertexSet::new([1, 3])).unwrap());
        assert!(blocked.is_independent(&VertexSet::new([0, 1])).unwrap());
        let adj = blocked.adjacency();
        assert_eq!(adj.neighbors(2), vec![1, 3, 4]);
        assert_eq!(adj.neighbor_count(2), 3);
        assert!(adj.has_loop(4));
        assert!(blocked.add_clique_block(4..6).is_err());
    }

    #[test]
    fn handshake_holds() {
        let mut g = MultiGraph::new(5);
        g.add_clique_block(0..3).unwrap();
        g.add_edge(3, 4, 4).unwrap();
        g.add_edge(4, 4, 2).unwrap();
        g.add_edge(0, 4, 1).unwrap();
        let sum: u64 = g.degrees().iter().sum();
        assert_eq!(sum, 2 * g.total_multiplicity());
    }

    #[test]
    fn append_shifts_everything() {
        let mut g = triangle();
        let mut h = MultiGraph::new(2);
        h.add_edge(0, 1, 2).unwrap();
        h.set_label(1, "x").unwrap();
        let r = g.append(&h);
        assert_eq!(r, 3..5);
        assert_eq!(g.multiplicity(3, 4), 2);
        assert_eq!(g.label(4), Some("x"));
    }

    #[test]
    fn induced_subgraph_flattens_blocks() {
        let g = MultiGraph::complete(4);
        let sub = g.induced_subgraph(&[3, 1]).unwrap();
        assert_eq!(sub.vertex_count(), 2);
        assert_eq!(sub.multiplicity(0, 1), 1);
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = MultiGraph::new(2);
        assert!(g.add_edge(0, 2, 1).is_err());
        assert!(g.add_edge(0, 1, 0).is_err());
        assert!(g.set_label(0, "has space").is_err());
    }
}
