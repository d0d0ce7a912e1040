use super::{DistanceTable, Graph};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// An ordered partition of `0..n` into non-empty cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl VertexPartition {
    pub fn new(n: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut cell_of = vec![usize::MAX; n];
        for (i, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::InvalidPartition(format!("cell {i} is empty")));
            }
            for &v in cell {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("vertex {v} out of range 0..{n}")));
                }
                if cell_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
                cell_of[v] = i;
            }
        }
        if let Some(v) = cell_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(Self { cells, cell_of })
    }

    /// Every vertex in its own cell, in vertex order.
    pub fn discrete(n: usize) -> Self {
        Self { cells: (0..n).map(|v| vec![v]).collect(), cell_of: (0..n).collect() }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn cell_of(&self, v: usize) -> usize {
        self.cell_of[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.cell_of.len()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Cell-to-cell neighbour counts of an equitable partition.
///
/// `entries[i][j]` is the number of neighbours every vertex of cell `i` has in
/// cell `j`; `sizes[i]` is the size of cell `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientMatrix {
    pub sizes: Vec<usize>,
    pub entries: Vec<Vec<usize>>,
}

impl QuotientMatrix {
    pub fn row_sums(&self) -> Vec<usize> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    /// `p_i * q_ij = p_j * q_ji` for all cells: both sides count the edges between cells `i` and `j`.
    pub fn double_count_holds(&self) -> bool {
        let m = self.sizes.len();
        (0..m).all(|i| (0..m).all(|j| self.sizes[i] * self.entries[i][j] == self.sizes[j] * self.entries[j][i]))
    }
}

/// The distance partition `{Γ_0(x), Γ_1(x), ...}` of a connected graph.
pub fn distance_partition(g: &Graph, dist: &DistanceTable, x: usize) -> Result<VertexPartition> {
    let ecc = dist.eccentricity(x).ok_or(Error::Disconnected)?;
    let cells = (0..=ecc).map(|i| dist.layer(x, i)).collect();
    VertexPartition::new(g.order(), cells)
}

/// Returns the quotient matrix if `part` is equitable, or the first vertex whose
/// neighbour count into some cell disagrees with the rest of its cell.
pub fn equitable_check(g: &Graph, part: &VertexPartition) -> Result<QuotientMatrix> {
    if part.vertex_count() != g.order() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} vertices, graph has {}",
            part.vertex_count(),
            g.order()
        )));
    }
    let m = part.len();
    let mut entries = Vec::with_capacity(m);
    let mut counts = vec![0usize; m];
    for cell in part.cells() {
        let mut row: Option<Vec<usize>> = None;
        for &v in cell {
            counts.fill(0);
            for w in g.neighbors(v) {
                counts[part.cell_of(w)] += 1;
            }
            match &row {
                None => row = Some(counts.clone()),
                Some(expected) => {
                    if let Some(j) = (0..m).find(|&j| counts[j] != expected[j]) {
                        return Err(Error::NotEquitable { vertex: v, cell: j, found: counts[j], expected: expected[j] });
                    }
                }
            }
        }
        entries.push(row.expect("cells are non-empty"));
    }
    Ok(QuotientMatrix { sizes: part.cell_sizes(), entries })
}
