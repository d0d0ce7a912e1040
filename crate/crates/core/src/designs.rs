//! Incidence structures and group divisible designs.
//!
//! Points are `0..points`; blocks are sorted point lists in a fixed order.
//! Design equality is labelled equality.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPartition};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IncidenceStructure {
    points: usize,
    blocks: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    /// Sorts every block; rejects out-of-range or repeated points inside a block.
    pub fn new(points: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(blocks.len());
        for (i, mut block) in blocks.into_iter().enumerate() {
            block.sort_unstable();
            if block.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::GddViolation(format!("block {i} repeats a point")));
            }
            if block.last().is_some_and(|&p| p >= points) {
                return Err(Error::GddViolation(format!("block {i} names a point outside 0..{points}")));
            }
            sorted.push(block);
        }
        Ok(Self { points, blocks: sorted })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks through each point.
    pub fn replication(&self) -> Vec<usize> {
        let mut r = vec![0; self.points];
        for block in &self.blocks {
            for &p in block {
                r[p] += 1;
            }
        }
        r
    }

    /// `counts[a * points + b]`: number of blocks containing both `a` and `b`.
    fn pair_counts(&self) -> Vec<usize> {
        let n = self.points;
        let mut counts = vec![0; n * n];
        for block in &self.blocks {
            for (i, &a) in block.iter().enumerate() {
                for &b in &block[i + 1..] {
                    counts[a * n + b] += 1;
                    counts[b * n + a] += 1;
                }
            }
        }
        counts
    }
}

/// Points `0..P`, blocks `P..P+B`, point `p` adjacent to block `B` iff `p ∈ B`.
pub fn incidence_graph(s: &IncidenceStructure) -> Graph {
    let p = s.points;
    let edges: Vec<(usize, usize)> = s
        .blocks
        .iter()
        .enumerate()
        .flat_map(|(i, block)| block.iter().map(move |&x| (x, p + i)))
        .collect();
    Graph::from_edges(p + s.blocks.len(), &edges).expect("indices are in range")
}

/// Swaps points and blocks: block `i` becomes point `i`, point `p` becomes the block of blocks through `p`.
pub fn dual_structure(s: &IncidenceStructure) -> IncidenceStructure {
    let mut blocks = vec![Vec::new(); s.points];
    for (i, block) in s.blocks.iter().enumerate() {
        for &p in block {
            blocks[p].push(i);
        }
    }
    IncidenceStructure { points: s.blocks.len(), blocks }
}

/// `GDD(n, m; k; λ₁, λ₂)`: `m` groups of size `n`, blocks of size `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GddParams {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub lambda1: usize,
    pub lambda2: usize,
}

impl GddParams {
    pub const fn new(n: usize, m: usize, k: usize, lambda1: usize, lambda2: usize) -> Self {
        Self { n, m, k, lambda1, lambda2 }
    }
}

impl std::fmt::Display for GddParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GDD({}, {}; {}; {}, {})", self.n, self.m, self.k, self.lambda1, self.lambda2)
    }
}

impl Serialize for GddParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.n, self.m, self.k, self.lambda1, self.lambda2].serialize(s)
    }
}

/// A verified group divisible design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gdd {
    pub structure: IncidenceStructure,
    pub groups: Vec<Vec<usize>>,
    pub params: GddParams,
}

impl Serialize for Gdd {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DesignJson {
            points: self.structure.points,
            groups: self.groups.clone(),
            blocks: self.structure.blocks.clone(),
            params: [self.params.n, self.params.m, self.params.k, self.params.lambda1, self.params.lambda2],
        }
        .serialize(s)
    }
}

/// Verifies group sizes, block sizes and both pair-coverage constants.
pub fn gdd_check(s: &IncidenceStructure, groups: &[Vec<usize>], expected: GddParams) -> Result<Gdd> {
    let partition = VertexPartition::new(s.points, groups.to_vec())?;
    if groups.len() != expected.m {
        return Err(Error::GddViolation(format!("{} groups, expected {}", groups.len(), expected.m)));
    }
    if let Some((i, g)) = groups.iter().enumerate().find(|(_, g)| g.len() != expected.n) {
        return Err(Error::GddViolation(format!("group {i} has {} points, expected {}", g.len(), expected.n)));
    }
    if let Some((i, b)) = s.blocks.iter().enumerate().find(|(_, b)| b.len() != expected.k) {
        return Err(Error::GddViolation(format!("block {i} has {} points, expected {}", b.len(), expected.k)));
    }
    let counts = s.pair_counts();
    let n = s.points;
    for a in 0..n {
        for b in a + 1..n {
            let same = partition.cell_of(a) == partition.cell_of(b);
            let want = if same { expected.lambda1 } else { expected.lambda2 };
            let found = counts[a * n + b];
            if found != want {
                let kind = if same { "same-group" } else { "cross-group" };
                return Err(Error::GddViolation(format!(
                    "{kind} points {a} and {b} lie in {found} common blocks, expected {want}"
                )));
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = groups.to_vec();
    for g in &mut groups {
        g.sort_unstable();
    }
    Ok(Gdd { structure: s.clone(), groups, params: expected })
}

/// A design read off a Q-regular graph, with the vertex behind every point and block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtractedGdd {
    pub base_vertex: usize,
    /// `point_vertices[i]` is the graph vertex that is point `i`.
    pub point_vertices: Vec<usize>,
    /// `block_vertices[j]` is the vertex `z` whose neighbourhood is block `j`.
    pub block_vertices: Vec<usize>,
    pub gdd: Gdd,
}

/// Points: vertices at even distance from `x`. Groups: antipodal pairs. Blocks: `Γ(z)` for `z` at odd distance.
pub fn gdd_from_graph(g: &Graph, x: usize) -> Result<ExtractedGdd> {
    g.check_vertex(x)?;
    let dist = g.distances();
    let (quotient, antipode) = crate::verifiers::q_regular_with(g, &dist).map_err(|e| match e {
        Error::NotApplicable(r) => Error::NotApplicable(r),
        other => Error::NotApplicable(other.to_string()),
    })?;
    let k = quotient.entries[0][1];
    let (point_vertices, block_vertices): (Vec<usize>, Vec<usize>) =
        (0..g.order()).partition(|&y| dist.hop(x, y).is_multiple_of(2));
    let mut index = vec![usize::MAX; g.order()];
    for (i, &y) in point_vertices.iter().enumerate() {
        index[y] = i;
    }
    let groups: Vec<Vec<usize>> = point_vertices
        .iter()
        .filter(|&&y| y < antipode[y])
        .map(|&y| vec![index[y], index[antipode[y]]])
        .collect();
    let blocks = block_vertices.iter().map(|&z| g.neighbors(z).map(|y| index[y]).collect()).collect();
    let structure = IncidenceStructure::new(point_vertices.len(), blocks)?;
    let gdd = gdd_check(&structure, &groups, GddParams::new(2, k + 1, k, 0, (k - 1) / 2))?;
    if let Some(p) = structure.replication().iter().position(|&r| r != k) {
        return Err(Error::GddViolation(format!("point {p} has replication {}, expected {k}", structure.replication()[p])));
    }
    Ok(ExtractedGdd { base_vertex: x, point_vertices, block_vertices, gdd })
}

/// A partition of the blocks that makes the dual structure a GDD with the same parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualGrouping {
    pub block_groups: Vec<Vec<usize>>,
    pub dual: Gdd,
}

/// Finds the block grouping that witnesses the dual property, if one exists.
///
/// When `λ₁ ≠ λ₂` the grouping is forced: two blocks belong to the same dual
/// group exactly when they meet in `λ₁` points. When `λ₁ = λ₂` it is not
/// determined by intersections; use [`dual_property_check_with`] and a declared grouping.
pub fn dual_property_check(d: &Gdd) -> Option<DualGrouping> {
    let p = d.params;
    if p.lambda1 == p.lambda2 {
        return None;
    }
    let blocks = d.structure.blocks();
    let b = blocks.len();
    let meet = |i: usize, j: usize| intersection_size(&blocks[i], &blocks[j]);
    let mut group_of = vec![usize::MAX; b];
    let mut block_groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..b {
        if group_of[i] != usize::MAX {
            continue;
        }
        let mut group = vec![i];
        group.extend((i + 1..b).filter(|&j| meet(i, j) == p.lambda1));
        if group.iter().any(|&j| group_of[j] != usize::MAX) {
            return None;
        }
        for &j in &group {
            group_of[j] = block_groups.len();
        }
        block_groups.push(group);
    }
    dual_property_check_with(d, &block_groups)
}

/// Verifies a declared block grouping for the dual property.
pub fn dual_property_check_with(d: &Gdd, block_groups: &[Vec<usize>]) -> Option<DualGrouping> {
    let dual = gdd_check(&dual_structure(&d.structure), block_groups, d.params).ok()?;
    Some(DualGrouping { block_groups: dual.groups.clone(), dual })
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DesignJson {
    points: usize,
    groups: Vec<Vec<usize>>,
    blocks: Vec<Vec<usize>>,
    params: [usize; 5],
}

/// A design file: structure, declared groups and claimed parameters, not yet checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignDocument {
    pub structure: IncidenceStructure,
    pub groups: Vec<Vec<usize>>,
    pub params: GddParams,
}

impl DesignDocument {
    pub fn check(&self) -> Result<Gdd> {
        gdd_check(&self.structure, &self.groups, self.params)
    }
}

/// `{"points": .., "groups": [[..]], "blocks": [[..]], "params": [n, m, k, l1, l2]}`
pub fn design_json_encode(d: &Gdd) -> String {
    serde_json::to_string(d).expect("plain struct serializes")
}

pub fn design_json_decode(input: &[u8]) -> Result<DesignDocument> {
    let doc: DesignJson = serde_json::from_slice(input).map_err(|e| Error::MalformedJson(e.to_string()))?;
    let structure =
        IncidenceStructure::new(doc.points, doc.blocks).map_err(|e| Error::MalformedJson(e.to_string()))?;
    let [n, m, k, l1, l2] = doc.params;
    Ok(DesignDocument { structure, groups: doc.groups, params: GddParams::new(n, m, k, l1, l2) })
}
