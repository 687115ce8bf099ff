//! Loopless undirected graphs and multigraphs.
//!
//! Vertices are dense integers `0..n`. Both types are immutable after
//! construction; mutation happens through the builders, which produce new
//! values. All iteration orders are ascending so downstream constructions
//! are reproducible.

pub mod formats;
pub mod generators;
mod multigraph;

pub use multigraph::{EdgeInstance, Multigraph, MultigraphBuilder};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("loop at vertex {0} not allowed")]
    Loop(usize),
    #[error("malformed {format} input: {reason}")]
    Malformed { format: &'static str, reason: String },
}

const WORD_BITS: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Loopless undirected simple graph on vertices `0..n`, stored as bitset
/// adjacency rows.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    edge_count: usize,
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl SimpleGraph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        SimpleGraph { n, words: words_for(n), adj: vec![0; n * words_for(n)], edge_count: 0 }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut b = SimpleGraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn builder(n: usize) -> SimpleGraphBuilder {
        SimpleGraphBuilder::new(n)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u * self.words + v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, vertex_count: self.n })
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        let row = &self.adj[v * self.words..(v + 1) * self.words];
        row.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> NeighborIter<'_> {
        let row = &self.adj[v * self.words..(v + 1) * self.words];
        NeighborIter { row, word_idx: 0, current: row.first().copied().unwrap_or(0) }
    }

    pub(crate) fn adjacency_row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// All edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Complement on the same vertex set (no loops).
    pub fn complement(&self) -> SimpleGraph {
        let mut b = SimpleGraphBuilder::new(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    b.add_edge(u, v).expect("complement edge in range");
                }
            }
        }
        b.build()
    }

    /// Subgraph induced by `verts`, relabeled to `0..verts.len()` in the
    /// order given. `verts` must be duplicate-free.
    pub fn induced_subgraph(&self, verts: &[usize]) -> Result<SimpleGraph, GraphError> {
        for &v in verts {
            self.check_vertex(v)?;
        }
        let mut b = SimpleGraphBuilder::new(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge(i, j).expect("induced edge in range");
                }
            }
        }
        Ok(b.build())
    }

    /// Disjoint union of `self` and `other` plus all cross edges.
    /// `other`'s vertices are relabeled to start at `self.vertex_count()`.
    pub fn join(&self, other: &SimpleGraph) -> SimpleGraph {
        let off = self.n;
        let mut b = SimpleGraphBuilder::new(self.n + other.n);
        for (u, v) in self.edges() {
            b.add_edge(u, v).unwrap();
        }
        for (u, v) in other.edges() {
            b.add_edge(u + off, v + off).unwrap();
        }
        for u in 0..self.n {
            for v in 0..other.n {
                b.add_edge(u, v + off).unwrap();
            }
        }
        b.build()
    }

    /// Iterated [`join`](Self::join) over a slice, left to right.
    pub fn join_all(graphs: &[&SimpleGraph]) -> SimpleGraph {
        match graphs {
            [] => SimpleGraph::empty(0),
            [g] => (*g).clone(),
            [first, rest @ ..] => {
                let mut acc = (*first).clone();
                for g in rest {
                    acc = acc.join(g);
                }
                acc
            }
        }
    }

    /// Image of the graph under a vertex relabeling: vertex v becomes
    /// `perm[v]`. `perm` must be a permutation of 0..n.
    pub fn relabeled(&self, perm: &[usize]) -> Result<SimpleGraph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::Malformed {
                format: "permutation",
                reason: format!("length {} vs {} vertices", perm.len(), self.n),
            });
        }
        let mut b = SimpleGraphBuilder::new(self.n);
        for (u, v) in self.edges() {
            b.add_edge(perm[u], perm[v])?;
        }
        let g = b.build();
        if g.edge_count() != self.edge_count() {
            return Err(GraphError::Malformed {
                format: "permutation",
                reason: "not a bijection".into(),
            });
        }
        Ok(g)
    }

    /// Graph with one edge removed.
    pub fn without_edge(&self, u: usize, v: usize) -> SimpleGraph {
        let mut g = self.clone();
        if g.has_edge(u, v) {
            g.adj[u * g.words + v / WORD_BITS] &= !(1u64 << (v % WORD_BITS));
            g.adj[v * g.words + u / WORD_BITS] &= !(1u64 << (u % WORD_BITS));
            g.edge_count -= 1;
        }
        g
    }

    /// Graph with one vertex removed (remaining vertices relabeled densely,
    /// preserving order).
    pub fn without_vertex(&self, v: usize) -> SimpleGraph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep).expect("kept vertices in range")
    }

    /// Connected components listed by smallest contained vertex, each
    /// sorted ascending.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

pub struct NeighborIter<'a> {
    row: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for NeighborIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD_BITS + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.row.len() {
                return None;
            }
            self.current = self.row[self.word_idx];
        }
    }
}

/// Builder for [`SimpleGraph`]. Duplicate edges are idempotent; loops are
/// rejected.
pub struct SimpleGraphBuilder {
    g: SimpleGraph,
}

impl SimpleGraphBuilder {
    pub fn new(n: usize) -> Self {
        SimpleGraphBuilder { g: SimpleGraph::empty(n) }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self, GraphError> {
        self.g.check_vertex(u)?;
        self.g.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if !self.g.has_edge(u, v) {
            let w = self.g.words;
            self.g.adj[u * w + v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
            self.g.adj[v * w + u / WORD_BITS] |= 1u64 << (u % WORD_BITS);
            self.g.edge_count += 1;
        }
        Ok(self)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.g.has_edge(u, v)
    }

    pub fn build(self) -> SimpleGraph {
        self.g
    }
}
