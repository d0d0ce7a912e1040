//! Simple graphs and digraphs on vertices `0..n`, stored as dense bitset rows.

mod codec;
mod distance;
pub(crate) mod ops;
mod partition;

pub use codec::{
    digraph6_encode, digraph_json_encode, graph6_decode, graph6_encode, graph_json_decode,
    graph_json_encode, read_graph,
};
pub use distance::{Bipartiteness, DistanceTable};
pub use ops::{
    antipode_map, bipartite_double, cartesian_product, complement, complete_graph, cycle_graph,
    folded_graph, hypercube, signature_partition, taylor_double, taylor_extension, SIGNATURES,
};
pub use partition::{distance_partition, equitable_check, QuotientMatrix, VertexPartition};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Clone, PartialEq, Eq, Hash)]
struct BitRows {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitRows {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self { n, words, bits: vec![0; n * words] }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        (self.bits[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    #[inline]
    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    fn row_ones(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + bit)
            })
        })
    }

    fn row_count(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and_count(&self, u: usize, v: usize) -> usize {
        self.row(u).iter().zip(self.row(v)).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }
}

/// A simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: BitRows,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self { adj: BitRows::new(n) }
    }

    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidEdge { u, v, n });
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric predicate evaluated on each pair `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.insert(u, v);
                }
            }
        }
        g
    }

    fn insert(&mut self, u: usize, v: usize) {
        self.adj.set(u, v);
        self.adj.set(v, u);
    }

    pub fn order(&self) -> usize {
        self.adj.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.row_ones(u)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj.row_count(u)
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order()).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// `|N(x) ∩ N(y)|` without validating the pair.
    #[inline]
    pub fn common_neighbor_count(&self, x: usize, y: usize) -> usize {
        self.adj.and_count(x, y)
    }

    pub fn common_neighbors(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(Error::SameVertex(x));
        }
        Ok(self.neighbors(x).filter(|&z| self.has_edge(y, z)).collect())
    }

    /// The common valency if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = if self.order() == 0 { 0 } else { self.degree(0) };
        (0..self.order()).all(|u| self.degree(u) == k).then_some(k)
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.order();
        IntMatrix::from_fn(n, n, |u, v| i64::from(self.has_edge(u, v)))
    }

    pub fn distances(&self) -> DistanceTable {
        DistanceTable::new(self)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.order() });
        }
        Ok(())
    }
}

/// A loopless digraph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    adj: BitRows,
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.order())
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

impl Digraph {
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut adj = BitRows::new(n);
        for &(u, v) in arcs {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidEdge { u, v, n });
            }
            adj.set(u, v);
        }
        Ok(Self { adj })
    }

    /// Arc `u -> v` iff `arc(u, v)`, evaluated on every ordered pair of distinct vertices.
    pub fn from_fn(n: usize, mut arc: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adj = BitRows::new(n);
        for u in 0..n {
            for v in 0..n {
                if u != v && arc(u, v) {
                    adj.set(u, v);
                }
            }
        }
        Self { adj }
    }

    pub fn order(&self) -> usize {
        self.adj.n
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.row_ones(u)
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.adj.row_count(u)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| self.out_neighbors(u).map(move |v| (u, v)))
    }

    /// Exactly one of `(u, v)`, `(v, u)` is an arc for every pair of distinct vertices.
    pub fn is_tournament(&self) -> bool {
        let n = self.order();
        (0..n).all(|u| (u + 1..n).all(|v| self.has_arc(u, v) != self.has_arc(v, u)))
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.order();
        IntMatrix::from_fn(n, n, |u, v| i64::from(self.has_arc(u, v)))
    }
}
