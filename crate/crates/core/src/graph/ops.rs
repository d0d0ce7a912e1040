//! Graph operations and standard families.
//!
//! Vertex numbering is fixed per operation so that repeated builds produce
//! identical labelled graphs:
//! - `cartesian_product(g, h)`: `(a, u)` is `a * |V(h)| + u`;
//! - `bipartite_double(g)`, `taylor_double(g)`: `x+` is `x`, `x-` is `n + x`;
//! - `taylor_extension(g)`: the apex is vertex `n` of `{∞} + g` before doubling;
//! - `folded_graph(g)`: fibres in order of their least vertex.

use super::{DistanceTable, Graph, VertexPartition};
use crate::error::{Error, Result};

pub fn complete_graph(n: usize) -> Graph {
    Graph::from_fn(n, |_, _| true)
}

pub fn cycle_graph(n: usize) -> Graph {
    Graph::from_fn(n, |u, v| v == u + 1 || (u == 0 && v == n - 1))
}

/// The `m`-cube on bitmasks `0..2^m`.
pub fn hypercube(m: u32) -> Graph {
    Graph::from_fn(1 << m, |u, v| (u ^ v).count_ones() == 1)
}

pub fn complement(g: &Graph) -> Graph {
    Graph::from_fn(g.order(), |u, v| !g.has_edge(u, v))
}

pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let m = h.order();
    Graph::from_fn(g.order() * m, |s, t| {
        let (a, u) = (s / m, s % m);
        let (b, w) = (t / m, t % m);
        (a == b && h.has_edge(u, w)) || (u == w && g.has_edge(a, b))
    })
}

/// Edges `x+ ~ y-` for every edge `x ~ y`.
pub fn bipartite_double(g: &Graph) -> Graph {
    let n = g.order();
    Graph::from_fn(2 * n, |s, t| s < n && t >= n && g.has_edge(s, t - n))
}

/// `x^δ ~ y^ε` (x ≠ y) iff `δε = 1` and `x ~ y`, or `δε = -1` and `x ≁ y`.
pub fn taylor_double(g: &Graph) -> Graph {
    let n = g.order();
    Graph::from_fn(2 * n, |s, t| {
        let (x, y) = (s % n, t % n);
        if x == y {
            return false;
        }
        let same_sign = (s < n) == (t < n);
        same_sign == g.has_edge(x, y)
    })
}

/// Taylor double of `{∞} + g` for a strongly regular `g` with `k = 2μ`.
pub fn taylor_extension(g: &Graph) -> Result<Graph> {
    let params = crate::verifiers::strongly_regular_params(g).map_err(|e| Error::NotHalfCaseSrg(e.to_string()))?;
    if params.k != 2 * params.mu {
        return Err(Error::NotHalfCaseSrg(format!("k = {} but mu = {}", params.k, params.mu)));
    }
    let n = g.order();
    let coned = Graph::from_fn(n + 1, |u, v| v == n || g.has_edge(u, v));
    Ok(taylor_double(&coned))
}

/// Quotient of an antipodal graph by its fibres `{x} ∪ Γ_d(x)`.
pub fn folded_graph(g: &Graph) -> Result<Graph> {
    let dist = g.distances();
    let d = dist.diameter().ok_or_else(|| Error::NotAntipodal("graph is disconnected".into()))?;
    let n = g.order();
    let mut fibre_of = vec![usize::MAX; n];
    let mut fibres: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if fibre_of[x] != usize::MAX {
            continue;
        }
        let mut fibre = vec![x];
        fibre.extend(dist.layer(x, d).into_iter().filter(|&y| y != x));
        for (i, &a) in fibre.iter().enumerate() {
            if fibre_of[a] != usize::MAX {
                return Err(Error::NotAntipodal(format!(
                    "vertex {a} is at distance {d} from vertices in two different fibres"
                )));
            }
            if let Some(&b) = fibre[i + 1..].iter().find(|&&b| dist.hop(a, b) != d) {
                return Err(Error::NotAntipodal(format!(
                    "{a} and {b} are both at distance {d} from {x} but {} apart",
                    dist.hop(a, b)
                )));
            }
        }
        for &a in &fibre {
            fibre_of[a] = fibres.len();
        }
        fibres.push(fibre);
    }
    let m = fibres.len();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let (a, b) = (fibre_of[u], fibre_of[v]);
        if a != b {
            edges.push((a.min(b), a.max(b)));
        }
    }
    Graph::from_edges(m, &edges)
}

/// Cell order of [`signature_partition`]: pairs `(d(x, y), d(x', y))`.
pub const SIGNATURES: [(u32, u32); 6] = [(0, 4), (1, 3), (2, 2), (3, 1), (3, 3), (4, 0)];

/// The pairing `x ↦ x'` of a diameter-4 graph in which every vertex has exactly one vertex at distance 4.
pub fn antipode_map(g: &Graph) -> Result<Vec<usize>> {
    antipodes(&g.distances())
}

pub(crate) fn antipodes(dist: &DistanceTable) -> Result<Vec<usize>> {
    let diameter = dist.diameter();
    if diameter != Some(4) {
        return Err(Error::WrongDiameter { expected: 4, found: diameter });
    }
    (0..dist.order())
        .map(|x| {
            let far = dist.layer(x, 4);
            match far.as_slice() {
                [y] => Ok(*y),
                _ => Err(Error::NoUniqueAntipode { vertex: x, count: far.len() }),
            }
        })
        .collect()
}

/// Partition of `V` by the signature `(d(x, y), d(x', y))`, cells in [`SIGNATURES`] order.
pub fn signature_partition(g: &Graph, x: usize) -> Result<VertexPartition> {
    g.check_vertex(x)?;
    let dist = g.distances();
    let antipode = antipodes(&dist)?;
    signature_cells(&dist, &antipode, x)
}

pub(crate) fn signature_index(dist: &DistanceTable, antipode: &[usize], x: usize, y: usize) -> Option<usize> {
    let sig = (dist.hop(x, y), dist.hop(antipode[x], y));
    SIGNATURES.iter().position(|&s| s == sig)
}

pub(crate) fn signature_cells(dist: &DistanceTable, antipode: &[usize], x: usize) -> Result<VertexPartition> {
    let mut cells = vec![Vec::new(); SIGNATURES.len()];
    for y in 0..dist.order() {
        let i = signature_index(dist, antipode, x, y).ok_or_else(|| {
            Error::MalformedInstance(format!(
                "vertex {y} has signature ({}, {}) relative to {x}",
                dist.hop(x, y),
                dist.hop(antipode[x], y)
            ))
        })?;
        cells[i].push(y);
    }
    if let Some(i) = cells.iter().position(Vec::is_empty) {
        return Err(Error::MalformedInstance(format!(
            "no vertex has signature {:?} relative to {x}",
            SIGNATURES[i]
        )));
    }
    VertexPartition::new(dist.order(), cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifiers::{distance_regular_array, strongly_regular_params, ArParams};

    fn c5_coned() -> Graph {
        let c5 = cycle_graph(5);
        Graph::from_fn(6, |u, v| v == 5 || c5.has_edge(u, v))
    }

    #[test]
    fn small_products() {
        let k2 = complete_graph(2);
        assert_eq!(cartesian_product(&k2, &k2), Graph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap());
        let mut cube = k2.clone();
        for _ in 1..5 {
            cube = cartesian_product(&cube, &k2);
        }
        // (a, u) ↦ 2a + u builds the same bitmask labelling as hypercube()
        assert_eq!(cube, hypercube(5));
    }

    #[test]
    fn bipartite_double_examples() {
        let c6 = bipartite_double(&complete_graph(3));
        assert_eq!(c6.regular_degree(), Some(2));
        assert!(c6.distances().is_connected());
        assert_eq!(c6.order(), 6);

        let d = bipartite_double(&cycle_graph(4));
        assert_eq!(d.order(), 8);
        assert!(!d.distances().is_connected());
    }

    #[test]
    fn taylor_double_examples() {
        let dk = taylor_double(&complete_graph(4));
        assert_eq!(dk.edge_count(), 12);
        assert!(!dk.distances().is_connected());

        let two_k2 = taylor_double(&Graph::empty(2));
        assert_eq!(two_k2.order(), 4);
        assert_eq!(two_k2.regular_degree(), Some(1));
        assert!(two_k2.has_edge(0, 3) && two_k2.has_edge(1, 2));

        let ico = taylor_double(&c5_coned());
        assert_eq!(ico.order(), 12);
        assert_eq!(ico.regular_degree(), Some(5));
        let array = distance_regular_array(&ico).unwrap();
        assert_eq!((array.b.as_slice(), array.c.as_slice()), (&[5, 2, 1][..], &[1, 2, 5][..]));
    }

    #[test]
    fn taylor_extension_precondition() {
        assert!(matches!(taylor_extension(&complete_graph(3)), Err(Error::NotHalfCaseSrg(_))));
        // K_{3,3} is SRG(6,3,0,3) with k != 2 mu
        let k33 = Graph::from_fn(6, |u, v| (u < 3) != (v < 3));
        assert!(matches!(taylor_extension(&k33), Err(Error::NotHalfCaseSrg(_))));
    }

    #[test]
    fn folded_examples() {
        let folded = folded_graph(&hypercube(5)).unwrap();
        assert_eq!(strongly_regular_params(&folded).unwrap(), ArParams::new(16, 5, 0, 2));
        assert_eq!(folded_graph(&cycle_graph(6)).unwrap(), complete_graph(3));
        assert!(matches!(folded_graph(&cycle_graph(5)), Err(Error::NotAntipodal(_))));
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(folded_graph(&two_k2), Err(Error::NotAntipodal(_))));
    }

    #[test]
    fn complement_involution() {
        assert_eq!(complement(&complete_graph(5)), Graph::empty(5));
        let g = hypercube(3);
        assert_eq!(complement(&complement(&g)), g);
    }

    #[test]
    fn antipode_requires_diameter_four() {
        assert_eq!(
            antipode_map(&hypercube(5)),
            Err(Error::WrongDiameter { expected: 4, found: Some(5) })
        );
        let pairs = antipode_map(&hypercube(4)).unwrap();
        for (x, &y) in pairs.iter().enumerate() {
            assert_eq!(y, x ^ 0b1111);
        }
    }

    #[test]
    fn hypercube_small_cases() {
        assert_eq!(hypercube(1), complete_graph(2));
        let q3 = hypercube(3);
        let dist = q3.distances();
        for x in 0..8 {
            for y in 0..8 {
                if dist.get(x, y) == Some(2) {
                    assert_eq!(q3.common_neighbor_count(x, y), 2);
                }
            }
        }
    }
}
