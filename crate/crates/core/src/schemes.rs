//! Association schemes given by their relation matrices.

use crate::constructions::CMatrixSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, QuotientMatrix, SIGNATURES};
use crate::matrix::IntMatrix;
use serde::Serialize;

/// `p[i][j][k]`: for `(x, z)` in `R_k`, the number of `y` with `(x, y)` in `R_i` and `(y, z)` in `R_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IntersectionNumbers {
    pub p: Vec<Vec<Vec<usize>>>,
}

impl IntersectionNumbers {
    pub fn get(&self, i: usize, j: usize, k: usize) -> usize {
        self.p[i][j][k]
    }
}

/// A verified association scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationScheme {
    order: usize,
    relations: Vec<IntMatrix>,
    symmetric: bool,
    commutative: bool,
    numbers: IntersectionNumbers,
}

impl AssociationScheme {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn relations(&self) -> &[IntMatrix] {
        &self.relations
    }

    /// Number of non-identity relations.
    pub fn classes(&self) -> usize {
        self.relations.len() - 1
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Row sums of each relation.
    pub fn valencies(&self) -> Vec<usize> {
        self.relations.iter().map(|f| f.row(0).iter().sum::<i64>() as usize).collect()
    }

    pub fn report(&self) -> SchemeReport {
        SchemeReport {
            classes: self.classes(),
            symmetric: self.symmetric,
            valencies: self.valencies(),
            p: self.numbers.clone(),
        }
    }
}

/// JSON summary of a scheme.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemeReport {
    pub classes: usize,
    pub symmetric: bool,
    pub valencies: Vec<usize>,
    pub p: IntersectionNumbers,
}

fn violation(axiom: &'static str, indices: Vec<usize>, position: (usize, usize)) -> Error {
    Error::SchemeViolation { axiom, indices, position }
}

/// Checks the scheme axioms by direct matrix arithmetic.
///
/// Axiom ids in witnesses: `identity`, `binary`, `partition`, `transpose`, `product`.
pub fn verify_scheme(relations: Vec<IntMatrix>) -> Result<AssociationScheme> {
    let Some(first) = relations.first() else {
        return Err(Error::DimensionMismatch("no relations given".into()));
    };
    let n = first.rows();
    if let Some(i) = relations.iter().position(|f| f.rows() != n || f.cols() != n) {
        return Err(Error::DimensionMismatch(format!("relation {i} is not {n}×{n}")));
    }
    for (i, f) in relations.iter().enumerate() {
        if let Some(pos) = first_entry(n, |a, b| !matches!(f.get(a, b), 0 | 1)) {
            return Err(violation("binary", vec![i], pos));
        }
    }
    if let Some(pos) = first_entry(n, |a, b| first.get(a, b) != i64::from(a == b)) {
        return Err(violation("identity", vec![0], pos));
    }
    if let Some(pos) = first_entry(n, |a, b| relations.iter().map(|f| f.get(a, b)).sum::<i64>() != 1) {
        return Err(violation("partition", (0..relations.len()).collect(), pos));
    }
    let transposes: Vec<IntMatrix> = relations.iter().map(IntMatrix::transpose).collect();
    for (i, t) in transposes.iter().enumerate() {
        if !relations.contains(t) {
            return Err(violation("transpose", vec![i], (0, 0)));
        }
    }
    let symmetric = relations.iter().zip(&transposes).all(|(f, t)| f == t);

    // Label each entry by its relation.
    let mut label = vec![0usize; n * n];
    for (k, f) in relations.iter().enumerate() {
        for (slot, &x) in label.iter_mut().zip(f.as_slice()) {
            if x == 1 {
                *slot = k;
            }
        }
    }
    let r = relations.len();
    let mut p = vec![vec![vec![0usize; r]; r]; r];
    let mut products = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let prod = &relations[i] * &relations[j];
            let mut seen: Vec<Option<i64>> = vec![None; r];
            for a in 0..n {
                for b in 0..n {
                    let k = label[a * n + b];
                    let value = prod.get(a, b);
                    match seen[k] {
                        None => seen[k] = Some(value),
                        Some(v) if v != value => return Err(violation("product", vec![i, j, k], (a, b))),
                        Some(_) => {}
                    }
                }
            }
            for (k, v) in seen.into_iter().enumerate() {
                p[i][j][k] = v.unwrap_or(0) as usize;
            }
            products.push(prod);
        }
    }
    let commutative = (0..r).all(|i| (0..r).all(|j| products[i * r + j] == products[j * r + i]));
    Ok(AssociationScheme { order: n, relations, symmetric, commutative, numbers: IntersectionNumbers { p } })
}

fn first_entry(n: usize, mut bad: impl FnMut(usize, usize) -> bool) -> Option<(usize, usize)> {
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| bad(a, b))
}

pub fn intersection_numbers(s: &AssociationScheme) -> IntersectionNumbers {
    s.numbers.clone()
}

/// `C1·C2 = C2·C1 = n·C0 + (n-1)/2·(C1 + C2)`, checked exactly.
pub fn verify_c1c2_identity(c: &CMatrixSet) -> bool {
    let n = c.n as i64;
    let rhs = &c.c0.scale(n) + &(&c.c1 + &c.c2).scale((n - 1) / 2);
    c.n % 2 == 1 && &c.c1 * &c.c2 == rhs && &c.c2 * &c.c1 == rhs
}

/// The 5-class scheme whose relations are the signature classes of a Q-regular graph.
pub fn scheme_from_q_regular_graph(g: &Graph) -> Result<AssociationScheme> {
    let dist = g.distances();
    let (_, antipode) = crate::verifiers::q_regular_with(g, &dist)?;
    let n = g.order();
    let mut relations = vec![IntMatrix::zeros(n, n); SIGNATURES.len()];
    for x in 0..n {
        for y in 0..n {
            let k = crate::graph::ops::signature_index(&dist, &antipode, x, y)
                .ok_or_else(|| Error::MalformedInstance(format!("pair ({x}, {y}) has no signature class")))?;
            relations[k].set(x, y, 1);
        }
    }
    verify_scheme(relations).map_err(|e| Error::MalformedInstance(e.to_string()))
}

/// Distribution diagram with respect to relation `r`: entry `(i, j)` counts, for `z` in `R_i(x)`,
/// the `y` in `R_j(x)` with `(y, z)` in `R_r`.
pub fn distribution_diagram(s: &AssociationScheme, r: usize) -> QuotientMatrix {
    let p = &s.numbers.p;
    let classes = s.relations.len();
    QuotientMatrix {
        sizes: s.valencies(),
        entries: (0..classes).map(|i| (0..classes).map(|j| p[j][r][i]).collect()).collect(),
    }
}
