//! Regularity checks, Q-regularity and the diameter-4/5 classifier.
//!
//! Every check either returns the extracted parameters or a concrete witness
//! (a vertex pair, a vertex and a cell) showing why the property fails.

use crate::designs::{gdd_from_graph, ExtractedGdd};
use crate::error::{Error, PairWitness, Result};
use crate::graph::{
    complement, folded_graph, DistanceTable, Graph, QuotientMatrix,
};
use crate::spectrum::{srg_eigenvalues, SrgEigenvalues};
use serde::{Serialize, Serializer};
use std::fmt;

/// Amply regular parameters `(v, k, λ, μ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl ArParams {
    pub const fn new(v: usize, k: usize, lambda: usize, mu: usize) -> Self {
        Self { v, k, lambda, mu }
    }

    /// `(4q + 4, q, 0, (q - 1) / 2)`, the parameters of every pipeline instance.
    pub const fn pipeline(q: usize) -> Self {
        Self::new(4 * q + 4, q, 0, (q - 1) / 2)
    }

    /// `(q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4)` for `q ≡ 1 (mod 4)`.
    pub const fn conference(q: usize) -> Self {
        Self::new(q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4)
    }
}

impl fmt::Display for ArParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

impl Serialize for ArParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.v, self.k, self.lambda, self.mu].serialize(s)
    }
}

/// `{b_0, ..., b_{d-1}; c_1, ..., c_d}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl IntersectionArray {
    pub fn diameter(&self) -> usize {
        self.c.len()
    }

    pub fn valency(&self) -> usize {
        self.b[0]
    }

    /// `a_i = k - b_i - c_i`, with `b_d = c_0 = 0`.
    pub fn a(&self, i: usize) -> usize {
        let b = self.b.get(i).copied().unwrap_or(0);
        let c = if i == 0 { 0 } else { self.c[i - 1] };
        self.valency() - b - c
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

fn connected_diameter(dist: &DistanceTable) -> Result<u32> {
    dist.diameter().ok_or(Error::Disconnected)
}

fn regular_valency(g: &Graph) -> Result<usize> {
    let k = g.degree(0);
    match (0..g.order()).find(|&u| g.degree(u) != k) {
        Some(u) => Err(Error::NotRegular { vertex: u, degree: g.degree(u), expected: k }),
        None => Ok(k),
    }
}

/// Common-neighbour count shared by every pair at `distance`, or the first pair that disagrees.
fn constant_common_count(
    g: &Graph,
    dist: &DistanceTable,
    distance: u32,
    quantity: &str,
) -> std::result::Result<Option<usize>, PairWitness> {
    let mut value = None;
    for x in 0..g.order() {
        for y in x + 1..g.order() {
            if dist.hop(x, y) != distance {
                continue;
            }
            let found = g.common_neighbor_count(x, y);
            match value {
                None => value = Some(found),
                Some(expected) if expected != found => {
                    return Err(PairWitness { quantity: quantity.into(), x, y, distance, found, expected });
                }
                Some(_) => {}
            }
        }
    }
    Ok(value)
}

pub(crate) fn amply_params_with(g: &Graph, dist: &DistanceTable) -> Result<ArParams> {
    let d = connected_diameter(dist)?;
    if d < 2 {
        return Err(Error::DiameterTooSmall { min: 2, found: d });
    }
    let k = regular_valency(g)?;
    let lambda = constant_common_count(g, dist, 1, "lambda").map_err(Error::NotAmplyRegular)?;
    let mu = constant_common_count(g, dist, 2, "mu").map_err(Error::NotAmplyRegular)?;
    Ok(ArParams::new(g.order(), k, lambda.unwrap_or(0), mu.expect("diameter >= 2")))
}

/// `(v, k, λ, μ)` of a connected regular graph with constant λ on edges and constant μ on distance-2 pairs.
pub fn amply_regular_params(g: &Graph) -> Result<ArParams> {
    amply_params_with(g, &g.distances())
}

/// SRG parameters of a connected graph of diameter 2.
pub fn strongly_regular_params(g: &Graph) -> Result<ArParams> {
    let dist = g.distances();
    let d = dist.diameter();
    if d != Some(2) {
        return Err(Error::WrongDiameter { expected: 2, found: d });
    }
    amply_params_with(g, &dist).map_err(|e| match e {
        Error::NotAmplyRegular(w) => Error::NotStronglyRegular(w),
        other => other,
    })
}

pub fn distance_regular_array(g: &Graph) -> Result<IntersectionArray> {
    distance_regular_array_with(g, &g.distances())
}

pub(crate) fn distance_regular_array_with(g: &Graph, dist: &DistanceTable) -> Result<IntersectionArray> {
    let d = connected_diameter(dist)? as usize;
    let mut c: Vec<Option<usize>> = vec![None; d + 1];
    let mut b: Vec<Option<usize>> = vec![None; d + 1];
    for x in 0..g.order() {
        for y in 0..g.order() {
            let i = dist.hop(x, y);
            let (mut back, mut ahead) = (0, 0);
            for z in g.neighbors(y) {
                let dz = dist.hop(x, z);
                if dz + 1 == i {
                    back += 1;
                } else if dz == i + 1 {
                    ahead += 1;
                }
            }
            for (slot, found, name) in [(&mut c[i as usize], back, "c"), (&mut b[i as usize], ahead, "b")] {
                match *slot {
                    None => *slot = Some(found),
                    Some(expected) if expected != found => {
                        return Err(Error::NotDistanceRegular(PairWitness {
                            quantity: format!("{name}{i}"),
                            x,
                            y,
                            distance: i,
                            found,
                            expected,
                        }));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(IntersectionArray {
        b: b[..d].iter().map(|v| v.unwrap_or(0)).collect(),
        c: c[1..].iter().map(|v| v.unwrap_or(0)).collect(),
    })
}

/// `(v, k, μ)` for a connected regular graph with constant μ on distance-2 pairs.
pub fn is_sesqui_regular(g: &Graph) -> Result<(usize, usize, usize)> {
    let dist = g.distances();
    let d = connected_diameter(&dist)?;
    if d < 2 {
        return Err(Error::DiameterTooSmall { min: 2, found: d });
    }
    let k = regular_valency(g)?;
    let mu = constant_common_count(g, &dist, 2, "mu").map_err(Error::NotSesquiRegular)?;
    Ok((g.order(), k, mu.expect("diameter >= 2")))
}

/// Connected, and every pair of distinct vertices has 0 or 2 common neighbours.
pub fn is_02_graph(g: &Graph) -> bool {
    let n = g.order();
    g.distances().is_connected()
        && (0..n).all(|x| (x + 1..n).all(|y| matches!(g.common_neighbor_count(x, y), 0 | 2)))
}

/// The quotient matrix of the six-cell signature partition for valency `k`.
///
/// Cells, in order: the base vertex `x`, `Γ(x)`, the vertices at distance 2
/// from both `x` and `x'`, `Γ(x')`, the two vertices at distance 3 from both,
/// and the antipode `x'`.
pub fn expected_quotient(k: usize) -> Result<QuotientMatrix> {
    if k < 5 || k.is_multiple_of(2) {
        return Err(Error::InvalidValency(k));
    }
    let h = (k - 1) / 2;
    Ok(QuotientMatrix {
        sizes: vec![1, k, 2 * k, k, 2, 1],
        entries: vec![
            vec![0, k, 0, 0, 0, 0],
            vec![1, 0, k - 1, 0, 0, 0],
            vec![0, h, 0, h, 1, 0],
            vec![0, 0, k - 1, 0, 0, 1],
            vec![0, 0, k, 0, 0, 0],
            vec![0, 0, 0, k, 0, 0],
        ],
    })
}

/// Preconditions shared by [`q_regular_check`] and [`classify`]: connected,
/// amply regular, `k ≥ 5` odd and `μ = (k - 1) / 2`. Returns the parameters and diameter.
fn half_mu_params(g: &Graph, dist: &DistanceTable) -> Result<(ArParams, u32)> {
    let params = amply_params_with(g, dist).map_err(|e| Error::NotApplicable(e.to_string()))?;
    if params.k < 5 || params.k % 2 == 0 {
        return Err(Error::NotApplicable(format!("valency {} is not an odd integer >= 5", params.k)));
    }
    if 2 * params.mu + 1 != params.k {
        return Err(Error::NotApplicable(format!("mu = {} is not (k - 1)/2 for k = {}", params.mu, params.k)));
    }
    let d = dist.diameter().expect("connected");
    Ok((params, d))
}

/// Checks that the signature partition at every vertex is equitable with quotient `expected_quotient(k)`.
pub fn q_regular_check(g: &Graph) -> Result<QuotientMatrix> {
    let dist = g.distances();
    q_regular_with(g, &dist).map(|(q, _)| q)
}

/// Returns the quotient and the antipode map.
pub(crate) fn q_regular_with(g: &Graph, dist: &DistanceTable) -> Result<(QuotientMatrix, Vec<usize>)> {
    let (params, d) = half_mu_params(g, dist)?;
    if d != 4 {
        return Err(Error::NotApplicable(format!("diameter {d} is not 4")));
    }
    let expected = expected_quotient(params.k)?;
    let antipode = crate::graph::ops::antipodes(dist).map_err(|e| match e {
        Error::NoUniqueAntipode { vertex, count } => Error::NotQRegular {
            vertex,
            detail: format!("{count} vertices at distance 4"),
        },
        other => other,
    })?;
    for x in 0..g.order() {
        let part = crate::graph::ops::signature_cells(dist, &antipode, x)
            .map_err(|e| Error::NotQRegular { vertex: x, detail: e.to_string() })?;
        let quotient = crate::graph::equitable_check(g, &part)
            .map_err(|e| Error::NotQRegular { vertex: x, detail: e.to_string() })?;
        if quotient != expected {
            return Err(Error::NotQRegular {
                vertex: x,
                detail: format!("quotient {:?} differs from {:?}", quotient.entries, expected.entries),
            });
        }
    }
    Ok((expected, antipode))
}

/// One bound evaluated by [`feasibility_diagnostics`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub bound: &'static str,
    pub applies: bool,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub checks: Vec<BoundCheck>,
}

impl FeasibilityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| !c.applies || c.holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| c.applies && !c.holds)
    }
}

/// Necessary conditions on `(v, k, λ, μ)` at diameter `d`.
pub fn feasibility_diagnostics(p: ArParams, d: u32) -> FeasibilityReport {
    let sane = p.k >= 1 && p.lambda < p.k && p.mu <= p.k;
    let b1 = p.k as i64 - p.lambda as i64 - 1;
    let checks = vec![
        BoundCheck {
            bound: "k >= 1, lambda <= k - 1, mu <= k",
            applies: true,
            holds: sane,
            detail: format!("k = {}, lambda = {}, mu = {}", p.k, p.lambda, p.mu),
        },
        BoundCheck {
            bound: "b1 = k - lambda - 1 >= (k + 1)/3 when d >= 3",
            applies: d >= 3,
            holds: 3 * b1 > p.k as i64,
            detail: format!("b1 = {b1}, (k + 1)/3 = {}/3", p.k + 1),
        },
        BoundCheck {
            bound: "mu <= k/2 when d >= 4",
            applies: d >= 4,
            holds: 2 * p.mu <= p.k,
            detail: format!("mu = {}, k/2 = {}/2", p.mu, p.k),
        },
    ];
    FeasibilityReport { checks }
}

/// Which alternative of the diameter ≥ 4, `μ = (k - 1)/2` trichotomy a graph falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Case {
    FiveCube,
    K2BoxLambda,
    GddIncidence,
    Contradiction,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "case")]
pub enum Classification {
    FiveCube {
        params: ArParams,
        folded: ArParams,
        folded_complement: ArParams,
        complement_eigenvalues: SrgEigenvalues,
    },
    K2BoxLambda {
        params: ArParams,
        /// `|Γ_4(x)|` for every vertex `x`.
        distance4_counts: Vec<usize>,
        q_regular_failure: String,
    },
    GddIncidence {
        params: ArParams,
        quotient: QuotientMatrix,
        design: ExtractedGdd,
    },
    /// The graph meets the hypotheses but none of the three outcomes.
    Contradiction {
        params: ArParams,
        diameter: u32,
        reason: String,
    },
}

impl Classification {
    pub fn case(&self) -> Case {
        match self {
            Self::FiveCube { .. } => Case::FiveCube,
            Self::K2BoxLambda { .. } => Case::K2BoxLambda,
            Self::GddIncidence { .. } => Case::GddIncidence,
            Self::Contradiction { .. } => Case::Contradiction,
        }
    }
}

const FIVE_CUBE: ArParams = ArParams::new(32, 5, 0, 2);
const FOLDED_FIVE_CUBE: ArParams = ArParams::new(16, 5, 0, 2);
const CLEBSCH: ArParams = ArParams::new(16, 10, 6, 6);
const K2_BOX_LAMBDA: ArParams = ArParams::new(28, 5, 0, 2);

pub fn classify(g: &Graph) -> Result<Classification> {
    let dist = g.distances();
    let (params, d) = half_mu_params(g, &dist)?;
    if d < 4 {
        return Err(Error::NotApplicable(format!("diameter {d} is below 4")));
    }
    let contradiction = |reason: String| Classification::Contradiction { params, diameter: d, reason };
    match d {
        5 => Ok(classify_diameter5(g, params).unwrap_or_else(contradiction)),
        4 => match q_regular_with(g, &dist) {
            Ok((quotient, _)) => {
                let design = gdd_from_graph(g, 0)?;
                Ok(Classification::GddIncidence { params, quotient, design })
            }
            Err(Error::NotQRegular { vertex, detail }) => {
                if params == K2_BOX_LAMBDA {
                    Ok(Classification::K2BoxLambda {
                        params,
                        distance4_counts: (0..g.order()).map(|x| dist.layer_size(x, 4)).collect(),
                        q_regular_failure: format!("vertex {vertex}: {detail}"),
                    })
                } else {
                    Ok(contradiction(format!("not Q-regular at vertex {vertex} ({detail}) and not (28,5,0,2)")))
                }
            }
            Err(e) => Err(e),
        },
        _ => Ok(contradiction(format!("diameter {d} exceeds 5"))),
    }
}

fn classify_diameter5(g: &Graph, params: ArParams) -> std::result::Result<Classification, String> {
    if params != FIVE_CUBE {
        return Err(format!("diameter 5 with parameters {params}, not {FIVE_CUBE}"));
    }
    if !g.is_bipartite() {
        return Err("diameter 5 but not bipartite".into());
    }
    let folded_graph = folded_graph(g).map_err(|e| e.to_string())?;
    let folded = strongly_regular_params(&folded_graph).map_err(|e| format!("folded graph: {e}"))?;
    if folded != FOLDED_FIVE_CUBE {
        return Err(format!("folded graph is SRG{folded}, not SRG{FOLDED_FIVE_CUBE}"));
    }
    let folded_complement = strongly_regular_params(&complement(&folded_graph)).map_err(|e| e.to_string())?;
    if folded_complement != CLEBSCH {
        return Err(format!("complement of the folded graph is SRG{folded_complement}"));
    }
    let complement_eigenvalues = srg_eigenvalues(folded_complement).map_err(|e| e.to_string())?;
    Ok(Classification::FiveCube { params, folded, folded_complement, complement_eigenvalues })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{im_pipeline, k2_box_lambda, lambda_14, paley_graph, taylor_bd_pipeline, BaseGraph};
    use crate::graph::{complete_graph, cycle_graph, hypercube, taylor_extension};

    fn k33() -> Graph {
        Graph::from_fn(6, |u, v| (u < 3) != (v < 3))
    }

    #[test]
    fn amply_regular_examples() {
        assert_eq!(amply_regular_params(&k33()).unwrap(), ArParams::new(6, 3, 0, 3));
        assert_eq!(amply_regular_params(&hypercube(5)).unwrap(), ArParams::new(32, 5, 0, 2));
        assert_eq!(amply_regular_params(&im_pipeline(7).unwrap()).unwrap(), ArParams::new(32, 7, 0, 3));
        assert_eq!(
            amply_regular_params(&complete_graph(4)),
            Err(Error::DiameterTooSmall { min: 2, found: 1 })
        );
    }

    #[test]
    fn non_regular_witness() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            amply_regular_params(&path),
            Err(Error::NotRegular { vertex: 1, degree: 2, expected: 1 })
        );
    }

    #[test]
    fn strongly_regular_examples() {
        assert_eq!(strongly_regular_params(&paley_graph(13).unwrap()).unwrap(), ArParams::new(13, 6, 2, 3));
        let folded = folded_graph(&hypercube(5)).unwrap();
        assert_eq!(strongly_regular_params(&folded).unwrap(), ArParams::new(16, 5, 0, 2));
        assert_eq!(
            strongly_regular_params(&cycle_graph(6)),
            Err(Error::WrongDiameter { expected: 2, found: Some(3) })
        );
        // C5 plus a chord: diameter 2, irregular
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        assert!(matches!(strongly_regular_params(&g), Err(Error::NotRegular { .. })));
    }

    #[test]
    fn distance_regular_examples() {
        let ico = taylor_extension(&paley_graph(5).unwrap()).unwrap();
        assert_eq!(distance_regular_array(&ico).unwrap().to_string(), "{5,2,1;1,2,5}");
        let cube = distance_regular_array(&hypercube(5)).unwrap();
        assert_eq!(cube.to_string(), "{5,4,3,2,1;1,2,3,4,5}");
        assert_eq!(cube.a(1), 0);
        match distance_regular_array(&k2_box_lambda()) {
            Err(Error::NotDistanceRegular(w)) => assert_eq!(w.distance, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn extraction_consistency() {
        for g in [hypercube(4), taylor_extension(&paley_graph(9).unwrap()).unwrap(), cycle_graph(7)] {
            let array = distance_regular_array(&g).unwrap();
            let p = amply_regular_params(&g).unwrap();
            assert_eq!((p.k, p.lambda, p.mu), (array.b[0], array.a(1), array.c[1]));
        }
    }

    #[test]
    fn sesqui_and_02() {
        assert_eq!(is_sesqui_regular(&k33()).unwrap(), (6, 3, 3));
        assert_eq!(is_sesqui_regular(&lambda_14()).unwrap(), (14, 4, 2));
        let k4_minus = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(is_sesqui_regular(&k4_minus).is_err());
        assert!(is_02_graph(&lambda_14()));
        assert!(is_02_graph(&hypercube(3)));
        assert!(!is_02_graph(&cycle_graph(5)));
    }

    #[test]
    fn expected_quotient_shape() {
        let q5 = expected_quotient(5).unwrap();
        assert_eq!(q5.sizes, vec![1, 5, 10, 5, 2, 1]);
        assert_eq!(q5.entries[2], vec![0, 2, 0, 2, 1, 0]);
        assert_eq!(expected_quotient(7).unwrap().entries[3], vec![0, 0, 6, 0, 0, 1]);
        for k in (5..40).step_by(2) {
            let q = expected_quotient(k).unwrap();
            assert!(q.row_sums().iter().all(|&s| s == k));
            assert!(q.double_count_holds());
        }
        assert_eq!(expected_quotient(6), Err(Error::InvalidValency(6)));
        assert_eq!(expected_quotient(3), Err(Error::InvalidValency(3)));
    }

    #[test]
    fn q_regular_examples() {
        let g = taylor_bd_pipeline(BaseGraph::Paley, 5).unwrap();
        assert_eq!(q_regular_check(&g).unwrap(), expected_quotient(5).unwrap());
        assert_eq!(q_regular_check(&im_pipeline(7).unwrap()).unwrap(), expected_quotient(7).unwrap());
        assert!(matches!(q_regular_check(&k2_box_lambda()), Err(Error::NotQRegular { .. })));
        assert!(matches!(q_regular_check(&hypercube(5)), Err(Error::NotApplicable(_))));
        assert!(matches!(q_regular_check(&cycle_graph(8)), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn feasibility_examples() {
        assert!(feasibility_diagnostics(ArParams::new(32, 5, 0, 2), 5).all_pass());
        let r = feasibility_diagnostics(ArParams::new(100, 9, 6, 1), 3);
        assert_eq!(r.violations().count(), 1);
        assert!(r.violations().next().unwrap().bound.starts_with("b1"));
        let r = feasibility_diagnostics(ArParams::new(100, 9, 0, 5), 4);
        assert!(r.violations().next().unwrap().bound.starts_with("mu"));
        // the mu bound is not claimed below diameter 4
        assert!(feasibility_diagnostics(ArParams::new(100, 9, 0, 5), 3).all_pass());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&hypercube(5)).unwrap().case(), Case::FiveCube);
        assert_eq!(classify(&k2_box_lambda()).unwrap().case(), Case::K2BoxLambda);
        match classify(&im_pipeline(7).unwrap()).unwrap() {
            Classification::GddIncidence { design, .. } => {
                let p = design.gdd.params;
                assert_eq!((p.n, p.m, p.k, p.lambda1, p.lambda2), (2, 8, 7, 0, 3));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(classify(&hypercube(4)), Err(Error::NotApplicable(_))));
        assert!(matches!(classify(&paley_graph(13).unwrap()), Err(Error::NotApplicable(_))));
    }
}
