//! Explicit families: Paley and Peisert graphs, the Paley tournament and its
//! 2-class scheme, the C-matrix pipeline, the Taylor/bipartite-double
//! pipeline, the square 2-(7,4,2) design Λ and `K2 □ Λ`.
//!
//! Families are also reachable by name through [`Registry`], which is what
//! the command-line tool uses.

use crate::designs::{incidence_graph, IncidenceStructure};
use crate::error::{Error, Result};
use crate::field::{Field, PrimePower};
use crate::graph::{bipartite_double, cartesian_product, complete_graph, hypercube, taylor_extension, Digraph, Graph};
use crate::matrix::IntMatrix;
use std::collections::BTreeMap;
use std::fmt;

/// Largest `q` accepted when no override is configured.
pub const DEFAULT_MAX_Q: u64 = 4096;

/// Environment variable that overrides [`DEFAULT_MAX_Q`].
pub const MAX_Q_ENV: &str = "ARGLAB_MAX_Q";

/// Upper bound on the field order a construction will accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard {
    pub max_q: u64,
}

impl Default for Guard {
    fn default() -> Self {
        Self { max_q: DEFAULT_MAX_Q }
    }
}

impl Guard {
    /// Reads [`MAX_Q_ENV`]; unset or unparsable values fall back to the default.
    pub fn from_env() -> Self {
        std::env::var(MAX_Q_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map_or_else(Self::default, |max_q| Self { max_q })
    }

    pub fn check(&self, q: u64) -> Result<()> {
        if q > self.max_q {
            return Err(Error::TooLarge { q, max: self.max_q });
        }
        Ok(())
    }
}

struct FieldTables {
    q: usize,
    /// `diff[u * q + v]` is the code of `x_u - x_v`.
    diff: Vec<u32>,
}

impl FieldTables {
    fn new(field: &Field) -> Self {
        let elements: Vec<_> = field.elements().collect();
        let q = elements.len();
        let mut diff = vec![0; q * q];
        for (u, x) in elements.iter().enumerate() {
            for (v, y) in elements.iter().enumerate() {
                diff[u * q + v] = field.encode(&field.sub(x, y)) as u32;
            }
        }
        Self { q, diff }
    }

    fn diff(&self, u: usize, v: usize) -> usize {
        self.diff[u * self.q + v] as usize
    }
}

fn square_table(field: &Field) -> Vec<bool> {
    let mut table = vec![false; field.q() as usize];
    for x in field.elements().filter(|x| !x.is_zero()) {
        table[field.encode(&field.mul(&x, &x)) as usize] = true;
    }
    table
}

fn paley_graph_unchecked(q: u64) -> Result<Graph> {
    let order = PrimePower::from_order(q)?;
    if q % 4 != 1 {
        return Err(Error::CongruenceError(format!("Paley graph needs q ≡ 1 (mod 4), got q = {q}")));
    }
    let field = Field::new(order);
    let squares = square_table(&field);
    let tables = FieldTables::new(&field);
    Ok(Graph::from_fn(q as usize, |u, v| squares[tables.diff(u, v)]))
}

fn peisert_graph_unchecked(q: u64) -> Result<Graph> {
    let order = PrimePower::from_order(q)?;
    if order.p() % 4 != 3 || order.r() % 2 != 0 {
        return Err(Error::CongruenceError(format!(
            "Peisert graph needs q = p^r with p ≡ 3 (mod 4) and r even, got {order}"
        )));
    }
    let field = Field::new(order);
    let mut class = vec![u8::MAX; q as usize];
    for x in field.elements().filter(|x| !x.is_zero()) {
        class[field.encode(&x) as usize] = field.quartic_class(&x)?;
    }
    let tables = FieldTables::new(&field);
    Ok(Graph::from_fn(q as usize, |u, v| class[tables.diff(u, v)] <= 1))
}

fn paley_digraph_unchecked(q: u64) -> Result<Digraph> {
    let order = PrimePower::from_order(q)?;
    if q % 4 != 3 || q < 7 {
        return Err(Error::CongruenceError(format!("Paley digraph needs q ≡ 3 (mod 4) and q ≥ 7, got q = {q}")));
    }
    let field = Field::new(order);
    let squares = square_table(&field);
    let tables = FieldTables::new(&field);
    Ok(Digraph::from_fn(q as usize, |a, b| squares[tables.diff(b, a)]))
}

/// Paley graph on GF(q): `x ~ y` iff `x - y` is a nonzero square. Vertices are element codes.
pub fn paley_graph(q: u64) -> Result<Graph> {
    Guard::from_env().check(q)?;
    paley_graph_unchecked(q)
}

/// Peisert graph on GF(q): `x ~ y` iff `x - y` lies in quartic class 0 or 1.
pub fn peisert_graph(q: u64) -> Result<Graph> {
    Guard::from_env().check(q)?;
    peisert_graph_unchecked(q)
}

/// Paley tournament on GF(q): an arc `a -> b` iff `b - a` is a nonzero square.
pub fn paley_digraph(q: u64) -> Result<Digraph> {
    Guard::from_env().check(q)?;
    paley_digraph_unchecked(q)
}

/// The relations `I, A1, A2 = A1ᵀ` of a tournament-based 2-class scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoClassScheme {
    pub n: usize,
    pub a1: IntMatrix,
    pub a2: IntMatrix,
}

impl TwoClassScheme {
    /// `[I, A1, A2]`.
    pub fn relations(&self) -> Vec<IntMatrix> {
        vec![IntMatrix::identity(self.n), self.a1.clone(), self.a2.clone()]
    }
}

pub fn paley_2class_scheme(q: u64) -> Result<TwoClassScheme> {
    let d = paley_digraph(q)?;
    let a1 = d.adjacency_matrix();
    let a2 = a1.transpose();
    Ok(TwoClassScheme { n: d.order(), a1, a2 })
}

/// `C0 = I`, `C1`, `C2 = C1ᵀ`, `C3 = J - C0 - C1 - C2`, all of order `2(n + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMatrixSet {
    pub n: usize,
    pub c0: IntMatrix,
    pub c1: IntMatrix,
    pub c2: IntMatrix,
    pub c3: IntMatrix,
}

impl CMatrixSet {
    pub fn order(&self) -> usize {
        2 * (self.n + 1)
    }
}

/// Assembles `C1` from `A1`, `A2` in the four-block layout with border rows and columns.
pub fn im_c_matrices(s: &TwoClassScheme) -> Result<CMatrixSet> {
    let n = s.n;
    if n < 5 || n.is_multiple_of(2) {
        return Err(Error::InvalidOrder(format!("need an odd order n ≥ 5, got {n}")));
    }
    if s.a1.rows() != n || s.a1.cols() != n || s.a2.rows() != n || s.a2.cols() != n {
        return Err(Error::DimensionMismatch(format!("relations must be {n}×{n}")));
    }
    let size = 2 * (n + 1);
    let mut c1 = IntMatrix::zeros(size, size);
    for i in 0..n {
        c1.set(0, 1 + i, 1);
        c1.set(1 + i, 2 * n + 1, 1);
        c1.set(n + 1 + i, 0, 1);
        c1.set(2 * n + 1, n + 1 + i, 1);
        for j in 0..n {
            c1.set(1 + i, 1 + j, s.a1.get(i, j));
            c1.set(1 + i, n + 1 + j, s.a2.get(i, j));
            c1.set(n + 1 + i, 1 + j, s.a2.get(i, j));
            c1.set(n + 1 + i, n + 1 + j, s.a1.get(i, j));
        }
    }
    let c0 = IntMatrix::identity(size);
    let c2 = c1.transpose();
    let c3 = &(&(&IntMatrix::ones(size, size) - &c0) - &c1) - &c2;
    Ok(CMatrixSet { n, c0, c1, c2, c3 })
}

/// Bipartite graph with rows `0..r` on one side and columns `r..r+c` on the other.
pub fn graph_from_biadjacency(b: &IntMatrix) -> Graph {
    let r = b.rows();
    Graph::from_fn(r + b.cols(), |u, v| u < r && v >= r && b.get(u, v - r) != 0)
}

pub fn im_pipeline(q: u64) -> Result<Graph> {
    let scheme = paley_2class_scheme(q)?;
    Ok(graph_from_biadjacency(&im_c_matrices(&scheme)?.c1))
}

/// Base strongly regular graph of the Taylor pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseGraph {
    Paley,
    Peisert,
}

impl fmt::Display for BaseGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Paley => "paley",
            Self::Peisert => "peisert",
        })
    }
}

/// Bipartite double of the Taylor extension of the chosen base graph.
pub fn taylor_bd_pipeline(kind: BaseGraph, q: u64) -> Result<Graph> {
    let base = match kind {
        BaseGraph::Paley => paley_graph(q)?,
        BaseGraph::Peisert => peisert_graph(q)?,
    };
    Ok(bipartite_double(&taylor_extension(&base)?))
}

/// Points `Z7`, blocks `B_i = Z7 \ {i+1, i+2, i+4}`.
pub fn lambda_design() -> IncidenceStructure {
    let blocks = (0..7)
        .map(|i| (0..7).filter(|x| ![1, 2, 4].iter().any(|d| (i + d) % 7 == *x)).collect())
        .collect();
    IncidenceStructure::new(7, blocks).expect("fixed design is well formed")
}

/// Incidence graph of [`lambda_design`]: points `0..7`, blocks `7..14`.
pub fn lambda_14() -> Graph {
    incidence_graph(&lambda_design())
}

pub fn k2_box_lambda() -> Graph {
    cartesian_product(&complete_graph(2), &lambda_14())
}

/// Output of a registered family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Built {
    Graph(Graph),
    Digraph(Digraph),
}

impl Built {
    pub fn order(&self) -> usize {
        match self {
            Self::Graph(g) => g.order(),
            Self::Digraph(d) => d.order(),
        }
    }

    pub fn into_graph(self) -> Option<Graph> {
        match self {
            Self::Graph(g) => Some(g),
            Self::Digraph(_) => None,
        }
    }
}

/// A named construction that can be selected at runtime.
pub trait Family: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn needs_q(&self) -> bool {
        true
    }
    /// Builds the instance; `q` has already passed the size guard.
    fn build(&self, q: Option<u64>) -> Result<Built>;
}

fn require_q(family: &dyn Family, q: Option<u64>) -> Result<u64> {
    q.ok_or_else(|| Error::MissingParameter(family.name().to_owned()))
}

struct Paley;
struct Peisert;
struct PaleyDigraph;
struct TaylorBd(BaseGraph);
struct Im;
struct Hypercube;
struct Lambda14;
struct K2BoxLambda;

impl Family for Paley {
    fn name(&self) -> &'static str {
        "paley"
    }
    fn summary(&self) -> &'static str {
        "Paley graph on GF(q), q ≡ 1 (mod 4)"
    }
    fn build(&self, q: Option<u64>) -> Result<Built> {
        paley_graph_unchecked(require_q(self, q)?).map(Built::Graph)
    }
}

impl Family for Peisert {
    fn name(&self) -> &'static str {
        "peisert"
    }
    fn summary(&self) -> &'static str {
        "Peisert graph on GF(p^r), p ≡ 3 (mod 4), r even"
    }
    fn build(&self, q: Option<u64>) -> Result<Built> {
        peisert_graph_unchecked(require_q(self, q)?).map(Built::Graph)
    }
}

impl Family for PaleyDigraph {
    fn name(&self) -> &'static str {
        "paley-digraph"
    }
    fn summary(&self) -> &'static str {
        "Paley tournament on GF(q), q ≡ 3 (mod 4), q ≥ 7"
    }
    fn build(&self, q: Option<u64>) -> Result<Built> {
        paley_digraph_unchecked(require_q(self, q)?).map(Built::Digraph)
    }
}

impl Family for TaylorBd {
    fn name(&self) -> &'static str {
        match self.0 {
            BaseGraph::Paley => "taylor-bd-paley",
            BaseGraph::Peisert => "taylor-bd-peisert",
        }
    }
    fn summary(&self) -> &'static str {
        match self.0 {
            BaseGraph::Paley => "bipartite double of the Taylor extension of a Paley graph",
            BaseGraph::Peisert => "bipartite double of the Taylor extension of a Peisert graph",
        }
    }
    fn build(&self, q: Option<u64>) -> Result<Built> {
        let q = require_q(self, q)?;
        let base = match self.0 {
            BaseGraph::Paley => paley_graph_unchecked(q)?,
            BaseGraph::Peisert => peisert_graph_unchecked(q)?,
        };
        Ok(Built::Graph(bipartite_double(&taylor_extension(&base)?)))
    }
}

impl Family for Im {
    fn name(&self) -> &'static str {
        "im"
    }
    fn summary(&self) -> &'static str {
        "bipartite graph with biadjacency C1 from the Paley tournament, q ≡ 3 (mod 4)"
    }
    fn build(&self, q: Option<u64>) -> Result<Built> {
        let d = paley_digraph_unchecked(require_q(self, q)?)?;
        let a1 = d.adjacency_matrix();
        let scheme = TwoClassScheme { n: d.order(), a2: a1.transpose(), a1 };
        Ok(Built::Graph(graph_from_biadjacency(&im_c_matrices(&scheme)?.c1)))
    }
}

/// Largest cube dimension the registry will build.
const MAX_CUBE_DIMENSION: u64 = 16;

impl Family for Hypercube {
    fn name(&self) -> &'static str {
        "hypercube"
    }
    fn summary(&self) -> &'static str {
        "hypercube Q_m with m given by --q"
    }
    fn build(&self, q: Option<u64>) -> Result<Built> {
        let m = require_q(self, q)?;
        if !(1..=MAX_CUBE_DIMENSION).contains(&m) {
            return Err(Error::InvalidOrder(format!("hypercube dimension must be 1..={MAX_CUBE_DIMENSION}, got {m}")));
        }
        Ok(Built::Graph(hypercube(m as u32)))
    }
}

impl Family for Lambda14 {
    fn name(&self) -> &'static str {
        "lambda14"
    }
    fn summary(&self) -> &'static str {
        "incidence graph of the square 2-(7,4,2) design"
    }
    fn needs_q(&self) -> bool {
        false
    }
    fn build(&self, _: Option<u64>) -> Result<Built> {
        Ok(Built::Graph(lambda_14()))
    }
}

impl Family for K2BoxLambda {
    fn name(&self) -> &'static str {
        "k2-box-lambda"
    }
    fn summary(&self) -> &'static str {
        "Cartesian product of K2 with lambda14"
    }
    fn needs_q(&self) -> bool {
        false
    }
    fn build(&self, _: Option<u64>) -> Result<Built> {
        Ok(Built::Graph(k2_box_lambda()))
    }
}

/// Families keyed by name, sharing one size guard.
pub struct Registry {
    guard: Guard,
    families: BTreeMap<&'static str, Box<dyn Family>>,
}

impl Registry {
    pub fn empty(guard: Guard) -> Self {
        Self { guard, families: BTreeMap::new() }
    }

    /// All built-in families.
    pub fn with_builtins(guard: Guard) -> Self {
        let mut r = Self::empty(guard);
        r.register(Box::new(Paley));
        r.register(Box::new(Peisert));
        r.register(Box::new(PaleyDigraph));
        r.register(Box::new(TaylorBd(BaseGraph::Paley)));
        r.register(Box::new(TaylorBd(BaseGraph::Peisert)));
        r.register(Box::new(Im));
        r.register(Box::new(Hypercube));
        r.register(Box::new(Lambda14));
        r.register(Box::new(K2BoxLambda));
        r
    }

    /// Adds a family, replacing any previous one with the same name.
    pub fn register(&mut self, family: Box<dyn Family>) {
        self.families.insert(family.name(), family);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Family> {
        self.families.get(name).map(|f| f.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.families.keys().copied()
    }

    pub fn guard(&self) -> Guard {
        self.guard
    }

    pub fn build(&self, name: &str, q: Option<u64>) -> Result<Built> {
        let family = self.get(name).ok_or_else(|| Error::UnknownFamily(name.to_owned()))?;
        if let Some(q) = q.filter(|_| family.needs_q()) {
            self.guard.check(q)?;
        }
        family.build(q)
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::with_builtins(Guard::from_env())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::gdd_check;
    use crate::verifiers::{amply_regular_params, strongly_regular_params, ArParams};
    use crate::graph::complement;

    #[test]
    fn paley_examples() {
        assert_eq!(strongly_regular_params(&paley_graph(5).unwrap()).unwrap(), ArParams::new(5, 2, 0, 1));
        let p13 = paley_graph(13).unwrap();
        assert_eq!(p13.neighbors(0).collect::<Vec<_>>(), vec![1, 3, 4, 9, 10, 12]);
        assert!(matches!(paley_graph(7), Err(Error::CongruenceError(_))));
        assert!(matches!(paley_graph(21), Err(Error::InvalidPrimePower(_))));
        for q in [9, 13, 17, 25] {
            let g = paley_graph(q).unwrap();
            let params = strongly_regular_params(&g).unwrap();
            assert_eq!(params, ArParams::conference(q as usize));
            assert_eq!(strongly_regular_params(&complement(&g)).unwrap(), params);
        }
    }

    #[test]
    fn peisert_examples() {
        let p9 = strongly_regular_params(&peisert_graph(9).unwrap()).unwrap();
        assert_eq!(p9, ArParams::new(9, 4, 1, 2));
        assert_eq!(p9, strongly_regular_params(&paley_graph(9).unwrap()).unwrap());
        assert_eq!(strongly_regular_params(&peisert_graph(49).unwrap()).unwrap(), ArParams::new(49, 24, 11, 12));
        assert!(matches!(peisert_graph(25), Err(Error::CongruenceError(_))));
        assert!(matches!(peisert_graph(7), Err(Error::CongruenceError(_))));
    }

    #[test]
    fn paley_digraph_examples() {
        let d = paley_digraph(7).unwrap();
        assert_eq!(d.out_neighbors(0).collect::<Vec<_>>(), vec![1, 2, 4]);
        assert!(d.is_tournament());
        let d = paley_digraph(11).unwrap();
        assert!((0..11).all(|u| d.out_degree(u) == 5));
        assert!(matches!(paley_digraph(13), Err(Error::CongruenceError(_))));
        assert!(matches!(paley_digraph(3), Err(Error::CongruenceError(_))));
    }

    #[test]
    fn two_class_scheme_q7() {
        let s = paley_2class_scheme(7).unwrap();
        let prod = &s.a1 * &s.a2;
        assert!((0..7).all(|i| prod.get(i, i) == 3));
        let total = &(&IntMatrix::identity(7) + &s.a1) + &s.a2;
        assert_eq!(total, IntMatrix::ones(7, 7));
    }

    #[test]
    fn c_matrix_layout() {
        let c = im_c_matrices(&paley_2class_scheme(7).unwrap()).unwrap();
        assert_eq!((c.c1.rows(), c.c1.cols()), (16, 16));
        assert!(c.c1.row_sums().iter().chain(c.c1.col_sums().iter()).all(|&s| s == 7));
        assert!(c.c3.is_binary());
        let sym = &c.c1 + &c.c2;
        let rhs = &IntMatrix::identity(16).scale(7) + &sym.scale(3);
        assert_eq!(&c.c1 * &c.c2, rhs);
        assert_eq!(&c.c2 * &c.c1, rhs);

        let even = TwoClassScheme { n: 4, a1: IntMatrix::zeros(4, 4), a2: IntMatrix::zeros(4, 4) };
        assert!(matches!(im_c_matrices(&even), Err(Error::InvalidOrder(_))));
    }

    #[test]
    fn biadjacency_examples() {
        let two_k2 = graph_from_biadjacency(&IntMatrix::identity(2));
        assert_eq!(two_k2, Graph::from_edges(4, &[(0, 2), (1, 3)]).unwrap());
        let c4 = graph_from_biadjacency(&IntMatrix::ones(2, 2));
        assert_eq!(c4.edge_count(), 4);
        assert_eq!(c4.regular_degree(), Some(2));
        let g = im_pipeline(7).unwrap();
        assert_eq!(g.order(), 32);
        assert_eq!(g.regular_degree(), Some(7));
        assert!(g.is_bipartite());
    }

    #[test]
    fn pipelines() {
        assert_eq!(amply_regular_params(&im_pipeline(11).unwrap()).unwrap(), ArParams::pipeline(11));
        assert!(matches!(im_pipeline(9), Err(Error::CongruenceError(_))));
        assert_eq!(amply_regular_params(&taylor_bd_pipeline(BaseGraph::Paley, 5).unwrap()).unwrap(), ArParams::new(24, 5, 0, 2));
        assert_eq!(amply_regular_params(&taylor_bd_pipeline(BaseGraph::Peisert, 9).unwrap()).unwrap(), ArParams::new(40, 9, 0, 4));
    }

    #[test]
    fn lambda_fixture() {
        let lam = lambda_design();
        assert_eq!(lam.replication(), vec![4; 7]);
        assert!(lam.blocks().iter().all(|b| b.len() == 4));
        let blocks_with = |x: usize, y: usize| lam.blocks().iter().filter(|b| b.contains(&x) && b.contains(&y)).count();
        assert_eq!(blocks_with(0, 1), 2);
        assert!(gdd_check(&lam, &(0..7).map(|x| vec![x]).collect::<Vec<_>>(), crate::designs::GddParams::new(1, 7, 4, 0, 2)).is_ok());
        let g = lambda_14();
        assert_eq!(g.distances().diameter(), Some(3));
        let k2l = k2_box_lambda();
        assert_eq!(amply_regular_params(&k2l).unwrap(), ArParams::new(28, 5, 0, 2));
        let dist = k2l.distances();
        assert_eq!(dist.diameter(), Some(4));
        assert!((0..28).all(|x| dist.layer_size(x, 4) == 3));
    }

    #[test]
    fn guard_refuses_large_orders() {
        let reg = Registry::with_builtins(Guard { max_q: 20 });
        assert_eq!(reg.build("paley", Some(25)).unwrap_err(), Error::TooLarge { q: 25, max: 20 });
        assert!(reg.build("paley", Some(17)).is_ok());
        assert_eq!(Guard::default().check(4097), Err(Error::TooLarge { q: 4097, max: 4096 }));
    }

    #[test]
    fn registry_dispatch() {
        let reg = Registry::with_builtins(Guard::default());
        assert_eq!(reg.names().count(), 9);
        assert!(matches!(reg.build("paley-digraph", Some(7)).unwrap(), Built::Digraph(_)));
        assert_eq!(reg.build("lambda14", None).unwrap().order(), 14);
        assert_eq!(reg.build("hypercube", Some(5)).unwrap().into_graph().unwrap(), hypercube(5));
        assert_eq!(reg.build("im", Some(7)).unwrap().into_graph().unwrap(), im_pipeline(7).unwrap());
        assert_eq!(
            reg.build("taylor-bd-peisert", Some(9)).unwrap().into_graph().unwrap(),
            taylor_bd_pipeline(BaseGraph::Peisert, 9).unwrap()
        );
        assert_eq!(reg.build("nope", None).unwrap_err(), Error::UnknownFamily("nope".into()));
        assert_eq!(reg.build("paley", None).unwrap_err(), Error::MissingParameter("paley".into()));
    }
}
