use super::Graph;
use std::collections::VecDeque;

const UNREACHABLE: u32 = u32::MAX;

/// All-pairs hop distances. Unreachable pairs hold a sentinel and read back as `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceTable {
    pub fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut dist = vec![UNREACHABLE; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let du = row[u];
                for v in g.neighbors(u) {
                    if row[v] == UNREACHABLE {
                        row[v] = du + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        Self { n, dist }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Option<u32> {
        let d = self.dist[x * self.n + y];
        (d != UNREACHABLE).then_some(d)
    }

    /// `d(x, y)` for a pair known to be connected.
    #[inline]
    pub(crate) fn hop(&self, x: usize, y: usize) -> u32 {
        self.dist[x * self.n + y]
    }

    pub fn is_connected(&self) -> bool {
        !self.dist.contains(&UNREACHABLE)
    }

    /// `None` when the graph is disconnected.
    pub fn diameter(&self) -> Option<u32> {
        if !self.is_connected() {
            return None;
        }
        Some(self.dist.iter().copied().max().unwrap_or(0))
    }

    pub fn eccentricity(&self, x: usize) -> Option<u32> {
        let row = &self.dist[x * self.n..(x + 1) * self.n];
        if row.contains(&UNREACHABLE) {
            return None;
        }
        row.iter().copied().max()
    }

    /// `Γ_i(x)`: the vertices at distance exactly `i` from `x`.
    pub fn layer(&self, x: usize, i: u32) -> Vec<usize> {
        (0..self.n).filter(|&y| self.hop(x, y) == i).collect()
    }

    pub fn layer_size(&self, x: usize, i: u32) -> usize {
        (0..self.n).filter(|&y| self.hop(x, y) == i).count()
    }
}

/// Result of a 2-colouring attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    /// `side[v]` is the colour class of `v`.
    Bipartite { side: Vec<bool> },
    /// A closed walk of odd length, listed as a vertex cycle.
    OddCycle(Vec<usize>),
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Self::Bipartite { .. })
    }
}

impl Graph {
    /// 2-colours each component by BFS parity.
    pub fn bipartiteness(&self) -> Bipartiteness {
        let n = self.order();
        let mut depth = vec![u32::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            if depth[root] != u32::MAX {
                continue;
            }
            depth[root] = 0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if depth[v] == u32::MAX {
                        depth[v] = depth[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if depth[v] % 2 == depth[u] % 2 {
                        return Bipartiteness::OddCycle(odd_cycle(&parent, &depth, u, v));
                    }
                }
            }
        }
        Bipartiteness::Bipartite { side: depth.iter().map(|d| d % 2 == 1).collect() }
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartiteness().is_bipartite()
    }
}

/// Joins the BFS tree paths from `u` and `v` at their lowest common ancestor.
fn odd_cycle(parent: &[usize], depth: &[u32], mut u: usize, mut v: usize) -> Vec<usize> {
    let mut left = vec![u];
    let mut right = vec![v];
    while depth[u] > depth[v] {
        u = parent[u];
        left.push(u);
    }
    while depth[v] > depth[u] {
        v = parent[v];
        right.push(v);
    }
    while u != v {
        u = parent[u];
        v = parent[v];
        left.push(u);
        right.push(v);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, hypercube};

    #[test]
    fn distance_examples() {
        let c6 = cycle_graph(6);
        assert_eq!(c6.distances().get(0, 3), Some(3));
        assert_eq!(hypercube(5).distances().diameter(), Some(5));
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let t = two_k2.distances();
        assert_eq!(t.get(0, 2), None);
        assert_eq!(t.diameter(), None);
        assert!(!t.is_connected());
    }

    #[test]
    fn bipartite_examples() {
        assert!(cycle_graph(6).is_bipartite());
        assert!(hypercube(5).is_bipartite());
        match complete_graph(3).bipartiteness() {
            Bipartiteness::OddCycle(c) => assert_eq!(c.len(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn odd_cycle_witness_is_a_cycle() {
        for len in [5, 7, 9] {
            let g = cycle_graph(len);
            let Bipartiteness::OddCycle(c) = g.bipartiteness() else { panic!() };
            assert_eq!(c.len() % 2, 1);
            for i in 0..c.len() {
                assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
            }
        }
    }
}
